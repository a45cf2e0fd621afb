#pragma once

#include "gelsolve/measures.hpp"
#include "gelsolve/root_finding.hpp"

namespace gelsolve::detail {

// G(x), with -inf where k0'(x,1) = 0.
double tangent(const ArmMeasure& measure, double x);
// H(u) without range checks; returns 1 for u >= G(1).
double tangent_inverse(const ArmMeasure& measure, double u, double tangent_at_one,
                       const RootOptions& opt);

}  // namespace gelsolve::detail
