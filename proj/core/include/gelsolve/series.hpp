#pragma once

#include <cstddef>
#include <vector>

#include "gelsolve/characteristics.hpp"
#include "gelsolve/measures.hpp"
#include "gelsolve/power_series.hpp"

namespace gelsolve {

/// Taylor data of the classical characteristic at time t: phi_t(x) = x / q(x)
/// with q(x) = exp(t g0(x) - log_scale). Lattice measures only.
PowerSeries characteristic_series(Model model, const MassMeasure& measure, double t, std::size_t order,
                                  const SolverConfig& cfg = {});

/// c_t(m) for m = 0..order (entry 0 is always 0) from g_t = g0 o h_t,
/// coefficient m of g_t being m c_t(m). Throws DomainError for non-lattice measures.
std::vector<double> concentrations(Model model, const MassMeasure& measure, double t,
                                   std::size_t order = 64, const SolverConfig& cfg = {});

/// c_t(a, m) for a = 0..a_max, m = 1..m_max on monodisperse arms data.
struct ArmsConcentrations {
  int a_max = 0;
  int m_max = 0;
  double alpha = 1.0;
  double beta = 0.0;
  /// nu(0) = 0: every entry with m >= 2 vanishes identically.
  bool degenerate = false;
  /// The m = 1 row is mu(a) alpha^{-a}; c(0,1) = mu(0) carries no physical meaning.
  bool unit_row_caveat = true;
  std::vector<double> values;  // index (m - 1) * (a_max + 1) + a

  double operator()(int a, int m) const {
    return values[static_cast<std::size_t>(m - 1) * static_cast<std::size_t>(a_max + 1) +
                  static_cast<std::size_t>(a)];
  }
};

/// Closed forms
///   c_t(a, m) = (a+m-2)!/(a! m!) beta^{m-1} / alpha^a nu^{*m}(a+m-2),   m >= 2,
/// with (alpha, beta) = (alpha_t, beta_t) for Smoluchowski-arms and
/// (1 + t A0, t / (1 + t A0)) for Flory-arms.
ArmsConcentrations arms_concentrations(const ArmLaw& mu, double alpha, double beta, int a_max, int m_max);

/// (a+m-2)!/(a! m!), exact integer arithmetic when a + m <= 20, log-gamma otherwise.
double arms_factorial_ratio(int a, int m);

struct LimitingConcentrations {
  Model model = Model::FloryArms;
  std::vector<double> c_inf;  ///< index m; entries 0 and 1 are unused (NaN)
  double beta_inf = kUndefined;  ///< Smoluchowski-arms only
  double p_or_c = kUndefined;    ///< p_nu (Flory-arms) or c = H(0) (Smoluchowski-arms)
  double M_inf = kUndefined;
  double T_gel = kInfinity;
  bool degenerate = false;
};

/// Smallest root of k0(x, 1) = A0 x on [0, 1]; exactly 1 when K <= A0.
double extinction_root(const ArmMeasure& measure, const SolverConfig& cfg = {});
/// c = H(0), the tangency point k0'(c) c = k0(c); exactly 1 without gelation.
double tangency_point(const ArmMeasure& measure, const SolverConfig& cfg = {});

/// Long-time limits for monodisperse arms data:
///   Flory-arms:        c_inf(m) = A0^{1-m} nu^{*m}(m-2) / (m(m-1)),  M_inf = sum mu(a) p^a
///   Smoluchowski-arms: c_inf(m) = beta_inf^{m-1} nu^{*m}(m-2) / (m(m-1)),
///                      beta_inf = 1/k0'(c) (1/A0 without gelation), M_inf = sum mu(a) c^a
LimitingConcentrations limiting_concentrations(Model model, const ArmMeasure& measure, int m_max,
                                               const SolverConfig& cfg = {});

}  // namespace gelsolve
