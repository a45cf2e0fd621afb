#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gelsolve/measures.hpp"
#include "gelsolve/root_finding.hpp"

namespace gelsolve {

enum class Model { Smoluchowski, Flory, SmoluchowskiArms, FloryArms };

std::string_view to_string(Model model) noexcept;
/// Accepts "smoluchowski", "flory", "smoluchowski-arms", "flory-arms".
Model parse_model(std::string_view text);
constexpr bool is_arms(Model model) noexcept {
  return model == Model::SmoluchowskiArms || model == Model::FloryArms;
}
constexpr bool is_flory_type(Model model) noexcept {
  return model == Model::Flory || model == Model::FloryArms;
}

struct SolverConfig {
  double root_tol = 1e-12;
  int max_iter = 200;
  double ode_dt = 1e-4;
  bool ode_adaptive = false;

  void validate() const;  ///< throws ConfigError
  RootOptions root_options(double f_tol = 0.0) const { return {root_tol, f_tol, max_iter}; }
};

/// Solved quantities at one instant. Fields that do not apply to a model are NaN.
struct SolutionState {
  double t = 0.0;
  double ell = 1.0;  ///< critical point: l_t (Flory flavours) or ell_t
  double alpha = 1.0;
  double beta = 0.0;
  double M = kUndefined;  ///< sol mass (classical models)
  double A = kUndefined;  ///< arm count (arms models)
};

// --- gelation times -------------------------------------------------------

/// 1/K for the classical models (0 when K = inf).
double gel_time(Model model, const MassMeasure& measure);
/// 1/(K - A0) if A0 < K, +inf if K <= A0.
double gel_time(Model model, const ArmMeasure& measure);

// --- classical critical points ---------------------------------------------

/// ell_t: 1 up to the gel time, afterwards the root of t x g0'(x) = 1.
double ell_smolu(double t, const MassMeasure& measure, const SolverConfig& cfg = {});
/// -ln ell_t, solved in the log variable (0 up to the gel time).
double ell_smolu_log(double t, const MassMeasure& measure, const SolverConfig& cfg = {});
/// m_t, the maximiser of the Flory characteristic; defined for t > T_gel only.
double m_crit(double t, const MassMeasure& measure, const SolverConfig& cfg = {});
/// l_t: 1 up to the gel time, afterwards the smallest root of
/// x = exp(-t (M0 - g0(x))), located in [0, m_t).
double l_flory(double t, const MassMeasure& measure, const SolverConfig& cfg = {});

/// Characteristic map of the classical models at a fixed time,
///   phi(x) = (x / anchor) exp(t (anchor_mass - g0(x))),
/// with (anchor, anchor_mass) = (ell_t, M_t) for Smoluchowski (this is
/// x alpha_t e^{-t g0(x)}) and (1, M0) for Flory.
///
/// Holds a non-owning pointer to the measure.
class ClassicCharacteristic {
 public:
  static ClassicCharacteristic at(Model model, const MassMeasure& measure, double t,
                                  const SolverConfig& cfg = {});

  double operator()(double x) const;
  double derivative(double x) const;
  /// Right inverse h_t on [0,1] with values in [0, crest()].
  double inverse(double x) const;

  double time() const noexcept { return t_; }
  /// Upper end of the invertibility bracket: ell_t (Smoluchowski) or l_t (Flory).
  double crest() const noexcept { return crest_; }
  /// log(alpha_t) for Smoluchowski, t*M0 for Flory.
  double log_scale() const noexcept;

 private:
  ClassicCharacteristic() = default;
  const MassMeasure* measure_ = nullptr;
  SolverConfig cfg_;
  double t_ = 0.0;
  double anchor_ = 1.0;
  double anchor_mass_ = 0.0;
  double crest_ = 1.0;
};

// --- arms models ------------------------------------------------------------

/// x-intercept of the tangent to k0(., 1) at x: G(x) = x - k0(x,1)/k0'(x,1).
/// Throws DomainError where k0'(x,1) = 0 or x is outside [0,1].
double tangent_root(const ArmMeasure& measure, double x);
/// H = G^{-1} on [G(0), G(1)); throws DomainError outside that range.
double tangent_root_inverse(const ArmMeasure& measure, double u, const SolverConfig& cfg = {});

/// Flory-arms l_t: 1 up to the gel time, afterwards the smallest root of
/// (1 + t A0) l - t k0(l, 1) = 1, i.e. phi_t(l_t, 1) = 1. A_t is continuous
/// across the gel time with this choice.
double l_flory_arms(double t, const ArmMeasure& measure, const SolverConfig& cfg = {});

/// phi(x, y) = scale (x - slope k0(x, y)). Smoluchowski-arms uses
/// (alpha_t, beta_t), Flory-arms (1 + t A0, t / (1 + t A0)).
///
/// Holds a non-owning pointer to the measure.
class ArmsCharacteristic {
 public:
  ArmsCharacteristic(const ArmMeasure& measure, double scale, double slope, const SolverConfig& cfg = {});

  double operator()(double x, double y) const;
  double derivative(double x, double y) const;
  /// Maximiser of phi(., y) on [0,1]; phi(., y) is concave.
  double peak(double y) const;
  /// Right inverse h(x, y), solved on [0, peak(y)].
  double inverse(double x, double y) const;
  /// Largest zero of phi(., y) below the peak (lower end of the bracket).
  double lower_root(double y) const { return inverse(0.0, y); }

  double scale() const noexcept { return scale_; }
  double slope() const noexcept { return slope_; }

 private:
  const ArmMeasure* measure_;
  double scale_;
  double slope_;
  SolverConfig cfg_;
};

/// (alpha_t, beta_t) of the Smoluchowski-arms model on [0, horizon].
///
/// alpha_t = 1 + A0 t and beta_t = t / (1 + A0 t) up to the gel time; after it
/// dalpha/dt = k0(H(1/alpha), 1) and dbeta/dt = 1/alpha^2 are integrated with
/// classical RK4 at step cfg.ode_dt (or Dormand-Prince when
/// cfg.ode_adaptive). Checkpoints are stored at construction, so queries are
/// const and thread-safe.
class AlphaBetaTrajectory {
 public:
  struct Point {
    double alpha;
    double beta;
  };

  AlphaBetaTrajectory(const ArmMeasure& measure, double horizon, const SolverConfig& cfg = {});

  double gel_time() const noexcept { return t_gel_; }
  double horizon() const noexcept { return horizon_; }
  const ArmMeasure& measure() const noexcept { return measure_; }

  Point at(double t) const;
  /// ell_t = H(1/alpha_t) after gelation, 1 before.
  double ell(double t) const;
  /// Right-hand side of the alpha equation, k0(H(1/alpha), 1).
  double growth_rate(double alpha) const;

  /// beta_inf = beta_T + int_0^{1/alpha_T} du / k0(H(u), 1) with T the horizon:
  /// the remaining integral of 1/alpha^2 after the change of variables u = 1/alpha.
  double beta_limit() const;

  /// alpha_t through the Gamma-function quadrature (independent cross-check).
  double alpha_via_gamma(double t) const;

 private:
  Point advance(Point p, double t0, double t1) const;
  Point rk4_step(Point p, double h) const;

  ArmMeasure measure_;
  SolverConfig cfg_;
  double t_gel_;
  double horizon_;
  double tangent_at_one_ = 0.0;  // G(1)
  static constexpr int kStride = 64;
  std::vector<Point> checkpoints_;  // at t_gel + k * kStride * dt
};

/// Samples (t, alpha, beta, ell, A) of the Smoluchowski-arms model on a uniform
/// grid of `samples` points over [0, t_end].
std::vector<SolutionState> alpha_beta_trajectory(const ArmMeasure& measure, double t_end,
                                                 const SolverConfig& cfg = {},
                                                 std::size_t samples = 201);

}  // namespace gelsolve
