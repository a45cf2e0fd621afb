#include <algorithm>
#include <array>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include "gelsolve/characteristics.hpp"
#include "gelsolve/errors.hpp"
#include "tangent.hpp"

namespace gelsolve {

namespace {

constexpr double kMaxSteps = 1e9;

// The integrands below call a root solve, so they carry noise near root_tol;
// asking the quadrature for less than that only drives it to maximum depth.
double quadrature_tol(const SolverConfig& cfg) { return std::max(100.0 * cfg.root_tol, 1e-13); }

using OdeState = std::array<double, 2>;

}  // namespace

AlphaBetaTrajectory::AlphaBetaTrajectory(const ArmMeasure& measure, double horizon,
                                         const SolverConfig& cfg)
    : measure_(measure), cfg_(cfg), t_gel_(gelsolve::gel_time(Model::SmoluchowskiArms, measure)),
      horizon_(horizon) {
  cfg_.validate();
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw DomainError("horizon must be finite and >= 0");
  if (std::isinf(t_gel_)) return;
  tangent_at_one_ = detail::tangent(measure_, 1.0);
  if (horizon_ <= t_gel_) return;

  const double dt = cfg_.ode_dt;
  const double span = horizon_ - t_gel_;
  if (span / dt > kMaxSteps) throw SolverError("ode_dt too small for the requested horizon");

  const double a_gel = 1.0 + measure_.A0() * t_gel_;
  Point p{a_gel, t_gel_ / a_gel};
  checkpoints_.push_back(p);
  const double block = kStride * dt;
  const auto blocks = static_cast<std::size_t>(std::ceil(span / block));
  checkpoints_.reserve(blocks + 1);
  for (std::size_t k = 0; k < blocks; ++k) {
    const double t0 = t_gel_ + static_cast<double>(k) * block;
    if (cfg_.ode_adaptive) {
      p = advance(p, t0, t0 + block);
    } else {
      for (int s = 0; s < kStride; ++s) p = rk4_step(p, dt);
    }
    checkpoints_.push_back(p);
  }
}

double AlphaBetaTrajectory::growth_rate(double alpha) const {
  const double x = detail::tangent_inverse(measure_, 1.0 / alpha, tangent_at_one_, cfg_.root_options());
  return measure_.k0(x, 1.0);
}

AlphaBetaTrajectory::Point AlphaBetaTrajectory::rk4_step(Point p, double h) const {
  auto f = [this](Point q) { return Point{growth_rate(q.alpha), 1.0 / (q.alpha * q.alpha)}; };
  const Point k1 = f(p);
  const Point k2 = f({p.alpha + 0.5 * h * k1.alpha, p.beta + 0.5 * h * k1.beta});
  const Point k3 = f({p.alpha + 0.5 * h * k2.alpha, p.beta + 0.5 * h * k2.beta});
  const Point k4 = f({p.alpha + h * k3.alpha, p.beta + h * k3.beta});
  return {p.alpha + h / 6.0 * (k1.alpha + 2.0 * k2.alpha + 2.0 * k3.alpha + k4.alpha),
          p.beta + h / 6.0 * (k1.beta + 2.0 * k2.beta + 2.0 * k3.beta + k4.beta)};
}

AlphaBetaTrajectory::Point AlphaBetaTrajectory::advance(Point p, double t0, double t1) const {
  const double dt = cfg_.ode_dt;
  if (cfg_.ode_adaptive) {
    namespace odeint = boost::numeric::odeint;
    OdeState y{p.alpha, p.beta};
    auto rhs = [this](const OdeState& s, OdeState& ds, double) {
      ds[0] = growth_rate(s[0]);
      ds[1] = 1.0 / (s[0] * s[0]);
    };
    const double tol = std::max(cfg_.root_tol, 1e-14);
    odeint::integrate_adaptive(odeint::make_controlled<odeint::runge_kutta_dopri5<OdeState>>(tol, tol),
                               rhs, y, t0, t1, std::min(dt, t1 - t0));
    return {y[0], y[1]};
  }
  const double span = t1 - t0;
  const auto steps = static_cast<long long>(std::floor(span / dt * (1.0 + 1e-12)));
  for (long long s = 0; s < steps; ++s) p = rk4_step(p, dt);
  const double rest = span - static_cast<double>(steps) * dt;
  if (rest > 0.0) p = rk4_step(p, rest);
  return p;
}

AlphaBetaTrajectory::Point AlphaBetaTrajectory::at(double t) const {
  if (!(t >= 0.0) || t > horizon_) throw DomainError("time outside the integrated window [0, horizon]");
  if (t <= t_gel_) {
    const double a = 1.0 + measure_.A0() * t;
    return {a, t / a};
  }
  const double block = kStride * cfg_.ode_dt;
  auto k = static_cast<std::size_t>(std::floor((t - t_gel_) / block));
  if (k >= checkpoints_.size()) k = checkpoints_.size() - 1;
  const double t0 = t_gel_ + static_cast<double>(k) * block;
  if (t <= t0) return checkpoints_[k];
  return advance(checkpoints_[k], t0, t);
}

double AlphaBetaTrajectory::ell(double t) const {
  if (t <= t_gel_) return 1.0;
  return detail::tangent_inverse(measure_, 1.0 / at(t).alpha, tangent_at_one_, cfg_.root_options());
}

double AlphaBetaTrajectory::beta_limit() const {
  if (std::isinf(t_gel_)) return 1.0 / measure_.A0();
  const double a_gel = 1.0 + measure_.A0() * t_gel_;
  const Point end = horizon_ > t_gel_ ? at(horizon_) : Point{a_gel, t_gel_ / a_gel};
  auto integrand = [this](double u) {
    const double x = detail::tangent_inverse(measure_, u, tangent_at_one_, cfg_.root_options());
    return 1.0 / measure_.k0(x, 1.0);
  };
  const double tail =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, 1.0 / end.alpha, 15, quadrature_tol(cfg_));
  return end.beta + tail;
}

double AlphaBetaTrajectory::alpha_via_gamma(double t) const {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be finite and >= 0");
  const double A0 = measure_.A0();
  if (t <= t_gel_) return 1.0 + A0 * t;
  const double a_gel = 1.0 + A0 * t_gel_;
  const double target = t - t_gel_;
  // Gamma(alpha) - Gamma(alpha_gel) = int_{alpha_gel}^{alpha} dv / k0(H(1/v), 1)
  auto elapsed = [&](double alpha) {
    if (alpha <= a_gel) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [this](double v) { return 1.0 / growth_rate(v); }, a_gel, alpha, 15, quadrature_tol(cfg_));
  };
  return newton_bisect([&](double alpha) { return elapsed(alpha) - target; },
                       [&](double alpha) { return 1.0 / growth_rate(alpha); }, a_gel,
                       a_gel + A0 * target, cfg_.root_options());
}

std::vector<SolutionState> alpha_beta_trajectory(const ArmMeasure& measure, double t_end,
                                                 const SolverConfig& cfg, std::size_t samples) {
  if (samples < 2) throw DomainError("trajectory needs at least two samples");
  const AlphaBetaTrajectory traj(measure, t_end, cfg);
  std::vector<SolutionState> out;
  out.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = i + 1 == samples ? t_end : t_end * static_cast<double>(i) / static_cast<double>(samples - 1);
    const auto p = traj.at(t);
    SolutionState s;
    s.t = t;
    s.alpha = p.alpha;
    s.beta = p.beta;
    s.ell = traj.ell(t);
    s.A = measure.k0(s.ell, 1.0) / p.alpha;
    out.push_back(s);
  }
  return out;
}

}  // namespace gelsolve
