#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gelsolve/characteristics.hpp"
#include "gelsolve/measures.hpp"

namespace gelsolve {

/// How the truncated system treats reactions whose product exceeds the lattice.
///  - NoBigCoagulation: such pairs do not react at all (approximates Smoluchowski).
///  - GelInteracting: they react and the product joins the gel; Flory-type models
///    additionally feel the gel-interaction loss term.
enum class Flavor { NoBigCoagulation, GelInteracting };

std::string_view to_string(Flavor flavor) noexcept;
/// Accepts "no-big-coagulation" and "gel-interacting".
Flavor parse_flavor(std::string_view text);

/// Truncated concentrations plus the gel-mass accumulator.
/// Classical layout: c[m], m = 0..m_max (c[0] unused).
/// Arms layout: c[m * (a_max + 1) + a], m = 0..m_max, a = 0..a_max (column m = 0 unused).
struct OracleState {
  double t = 0.0;
  double gel_mass = 0.0;
  int m_max = 0;
  int a_max = -1;  ///< -1 for the classical models
  std::vector<double> c;

  bool is_arms() const noexcept { return a_max >= 0; }
  double conc(int m) const;
  double conc(int a, int m) const;
  double sol_mass() const;    ///< sum m c
  double arms_total() const;  ///< sum a c (arms layout)
};

OracleState oracle_initial(const MassMeasure& measure, int m_max);
OracleState oracle_initial(const ArmMeasure& measure, int a_max, int m_max);

/// Classical RK4 on the truncated system. Each interval between consecutive
/// sample times is split into the fewest equal substeps not exceeding dt.
/// Returns one state per sample time (which must be nondecreasing and start at
/// or after initial.t). Throws InstabilityError on a negative concentration
/// below -1e-12.
std::vector<OracleState> integrate(Model model, Flavor flavor, const OracleState& initial,
                                   const std::vector<double>& sample_times, double dt = 1e-3);

/// Uniform grid of `samples` points on [initial.t, t_end].
std::vector<OracleState> integrate(Model model, Flavor flavor, const OracleState& initial, double t_end,
                                   double dt, std::size_t samples);

// --- comparison ---------------------------------------------------------------

enum class Quantity { Mass, Arms, Concentrations };

/// Per-time vectors of a quantity: Mass and Arms give one value per time,
/// Concentrations the vector c(1..n) (classic) or c(a, m), a <= a_max, m <= m_max (arms).
struct QuantityTrajectory {
  std::vector<double> t;
  std::vector<std::vector<double>> values;
};

QuantityTrajectory extract(const std::vector<OracleState>& states, Quantity quantity, int max_mass = 0,
                           int max_arms = 0);

struct ErrorRow {
  double t;
  double max_abs;
  double max_rel;
};

struct ErrorReport {
  std::vector<ErrorRow> rows;
  double max_abs = 0.0;
  double max_rel = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

/// Entrywise errors of `oracle` against `analytic` at matching times. Throws
/// UsageError when the grids or vector lengths differ.
ErrorReport compare(const QuantityTrajectory& analytic, const QuantityTrajectory& oracle, double tolerance);

}  // namespace gelsolve
