#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gelsolve/characteristics.hpp"
#include "gelsolve/measures.hpp"

namespace gelsolve {

/// Smoluchowski or Flory model with multiplicative kernel for a mass measure.
class ClassicSolution {
 public:
  /// Throws ModelError for arms models and for Flory with infinite M0.
  ClassicSolution(Model model, MassMeasure measure, SolverConfig cfg = {});

  Model model() const noexcept { return model_; }
  const MassMeasure& measure() const noexcept { return measure_; }
  const SolverConfig& config() const noexcept { return cfg_; }
  double gel_time() const noexcept { return t_gel_; }

  /// ell_t (Smoluchowski) or l_t (Flory).
  double ell(double t) const;
  /// M_t = <mu_t, m> = g0(ell_t) or g0(l_t).
  double mass(double t) const;
  /// g_t(x) = g0(h_t(x)).
  double gen_fun(double t, double x) const;
  /// <mu_t, m^2> = g_t'(1); +inf from the gel time on (Smoluchowski) or at it (Flory).
  double second_moment(double t) const;
  double phi(double t, double x) const;
  double h(double t, double x) const;
  ClassicCharacteristic characteristic(double t) const;
  SolutionState state(double t) const;

 private:
  Model model_;
  MassMeasure measure_;
  SolverConfig cfg_;
  double t_gel_;
};

/// Smoluchowski-arms or Flory-arms model for an arm measure. The
/// Smoluchowski-arms (alpha, beta) trajectory is integrated once on
/// [0, horizon]; queries beyond the horizon throw DomainError.
class ArmsSolution {
 public:
  ArmsSolution(Model model, ArmMeasure measure, double horizon, SolverConfig cfg = {});

  Model model() const noexcept { return model_; }
  const ArmMeasure& measure() const noexcept { return measure_; }
  const SolverConfig& config() const noexcept { return cfg_; }
  double gel_time() const noexcept { return t_gel_; }
  double horizon() const noexcept { return horizon_; }
  /// Present for Smoluchowski-arms only.
  const AlphaBetaTrajectory* trajectory() const noexcept { return traj_ ? &*traj_ : nullptr; }

  /// (alpha_t, beta_t); Flory-arms reports (1 + t A0, t / (1 + t A0)).
  AlphaBetaTrajectory::Point scaling(double t) const;
  double ell(double t) const;
  /// A_t = <c_t, a> = k0(ell_t, 1) / alpha_t.
  double arms_count(double t) const;
  /// k_t(x, y) = k0(h_t(x, y), y) / alpha_t.
  double gen_fun(double t, double x, double y) const;
  /// <c_t, a^2> = d_x k_t(1,1) + A_t.
  double second_moment(double t) const;
  double phi(double t, double x, double y) const;
  double h(double t, double x, double y) const;
  ArmsCharacteristic characteristic(double t) const;
  SolutionState state(double t) const;

 private:
  void check_time(double t) const;

  Model model_;
  ArmMeasure measure_;
  SolverConfig cfg_;
  double t_gel_;
  double horizon_;
  std::optional<AlphaBetaTrajectory> traj_;
};

// --- right derivative of the mass at the gel time ---------------------------

/// A generating function near x = 1: value(s, order) = g0^{(order)}(1 - s).
struct GelProfile {
  std::string name;
  std::function<double(double s, int order)> near_one;
};

GelProfile gel_profile(const MassMeasure& measure);
/// g0(x) = (1-x) log(1-x) + x
GelProfile gel_profile_log();
/// g0(x) = sqrt(1-x) log(1-x) + x
GelProfile gel_profile_sqrt_log();
/// g0(x) = 1 - sqrt(1 - x^{2 alpha})
GelProfile gel_profile_sqrt_power(double alpha);

enum class LimitVerdict { Converged, Diverged, Undefined };
std::string to_string(LimitVerdict verdict);

struct LimitEstimate {
  LimitVerdict verdict = LimitVerdict::Undefined;
  double value = kUndefined;    ///< limit, +-inf when diverged, NaN when undefined
  std::vector<double> s;         ///< sample points 1 - x_k
  std::vector<double> sequence;  ///< -(g0')^3 / (g0' + x g0'') at the samples
};

/// Estimates lim_{x->1-} -(g0')^3/(g0' + x g0'') from x_k = 1 - 2^-k, k = 10..40.
/// Converged: the last three values agree within 1e-5 (relative, absolute
/// below magnitude 1). Diverged: magnitudes exceed 1e12 monotonically, or
/// the tail is monotone with non-shrinking increments.
LimitEstimate mass_right_derivative_at_gel(const GelProfile& profile);
/// Throws DomainError unless 0 < T_gel < inf.
LimitEstimate mass_right_derivative_at_gel(const MassMeasure& measure);

// --- long-time behaviour -----------------------------------------------------

struct AsymptoticsReport {
  Model model = Model::Smoluchowski;
  double m0 = 0.0;
  double constant = kUndefined;  ///< proven limit of the statistic, NaN when none
  std::string statistic;          ///< what was sampled
  std::string rate;               ///< asymptotic statement
  std::vector<double> t;
  std::vector<double> values;     ///< statistic on the time grid
  double fitted_exponent = kUndefined;  ///< d ln M / d ln t on the last interval
  bool consistent = false;        ///< last sample within tolerance of the constant
};

/// Samples the model on a geometric grid t_k = t_first * 2^k up to t_last.
AsymptoticsReport asymptotics_report(const ClassicSolution& solution, double t_first = 2.0,
                                     double t_last = 64.0, double tol = 1e-3);

// --- integrability of M^2 near t = 0 ----------------------------------------

struct IntegrabilityStudy {
  std::vector<double> delta;
  std::vector<double> integral;  ///< int_delta^upper M_s^2 ds
  double last_difference = kInfinity;
  bool converged = false;
};

/// Refines delta = 10^-1, 10^-2, ... until successive integrals differ by
/// less than tol (or delta reaches 10^-max_exponent).
IntegrabilityStudy mass_square_integrability(const ClassicSolution& solution, double upper = 0.1,
                                             double tol = 1e-4, int max_exponent = 24);

}  // namespace gelsolve
