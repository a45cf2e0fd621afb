#include "gelsolve/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gelsolve/errors.hpp"

namespace gelsolve {

namespace {

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be finite and >= 0");
}

}  // namespace

// --- classical models -------------------------------------------------------

ClassicSolution::ClassicSolution(Model model, MassMeasure measure, SolverConfig cfg)
    : model_(model), measure_(std::move(measure)), cfg_(cfg), t_gel_(0.0) {
  if (is_arms(model_)) throw ModelError("arms models need an arm measure");
  cfg_.validate();
  if (model_ == Model::Flory && std::isinf(measure_.moments().M0)) {
    throw ModelError("Flory's model makes sense only for finite initial mass <mu0, m>");
  }
  t_gel_ = gelsolve::gel_time(model_, measure_);
}

double ClassicSolution::ell(double t) const {
  return model_ == Model::Smoluchowski ? ell_smolu(t, measure_, cfg_) : l_flory(t, measure_, cfg_);
}

double ClassicSolution::mass(double t) const {
  require_time(t);
  if (t <= t_gel_) return measure_.moments().M0;
  if (model_ == Model::Smoluchowski) return measure_.g0_log(ell_smolu_log(t, measure_, cfg_));
  return measure_.g0(l_flory(t, measure_, cfg_));
}

ClassicCharacteristic ClassicSolution::characteristic(double t) const {
  return ClassicCharacteristic::at(model_, measure_, t, cfg_);
}

double ClassicSolution::phi(double t, double x) const { return characteristic(t)(x); }

double ClassicSolution::h(double t, double x) const { return characteristic(t).inverse(x); }

double ClassicSolution::gen_fun(double t, double x) const {
  // Values of phi_t at its crest may overshoot 1 by rounding.
  if (x > 1.0 && x <= 1.0 + 1e-12) x = 1.0;
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("g_t is defined on [0,1]");
  if (x == 1.0) return mass(t);
  return measure_.g0(h(t, x));
}

double ClassicSolution::second_moment(double t) const {
  require_time(t);
  const double K = measure_.moments().K;
  if (t == t_gel_) return kInfinity;
  if (t < t_gel_) return K / (1.0 - t * K);
  if (model_ == Model::Smoluchowski) return kInfinity;
  // g_t'(1) = g0'(l_t) / phi_t'(l_t); phi_t'(l_t) > 0 after gelation.
  const auto ch = characteristic(t);
  const double l = ch.crest();
  return measure_.g0(l, 1) / ch.derivative(l);
}

SolutionState ClassicSolution::state(double t) const {
  const auto ch = characteristic(t);
  SolutionState s;
  s.t = t;
  s.ell = ch.crest();
  s.alpha = std::exp(ch.log_scale());
  s.beta = kUndefined;
  s.M = mass(t);
  s.A = kUndefined;
  return s;
}

// --- arms models ------------------------------------------------------------

ArmsSolution::ArmsSolution(Model model, ArmMeasure measure, double horizon, SolverConfig cfg)
    : model_(model), measure_(std::move(measure)), cfg_(cfg), t_gel_(0.0), horizon_(horizon) {
  if (!is_arms(model_)) throw ModelError("classical models need a mass measure");
  cfg_.validate();
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw DomainError("horizon must be finite and >= 0");
  t_gel_ = gelsolve::gel_time(model_, measure_);
  if (model_ == Model::SmoluchowskiArms) traj_.emplace(measure_, horizon_, cfg_);
}

void ArmsSolution::check_time(double t) const {
  require_time(t);
  if (traj_ && t > horizon_) {
    std::ostringstream os;
    os << "t = " << t << " lies beyond the integrated horizon " << horizon_;
    throw DomainError(os.str());
  }
}

AlphaBetaTrajectory::Point ArmsSolution::scaling(double t) const {
  check_time(t);
  if (traj_) return traj_->at(t);
  const double a = 1.0 + t * measure_.A0();
  return {a, t / a};
}

double ArmsSolution::ell(double t) const {
  check_time(t);
  return traj_ ? traj_->ell(t) : l_flory_arms(t, measure_, cfg_);
}

ArmsCharacteristic ArmsSolution::characteristic(double t) const {
  const auto p = scaling(t);
  return ArmsCharacteristic(measure_, p.alpha, p.beta, cfg_);
}

double ArmsSolution::arms_count(double t) const {
  return measure_.k0(ell(t), 1.0) / scaling(t).alpha;
}

double ArmsSolution::phi(double t, double x, double y) const { return characteristic(t)(x, y); }

double ArmsSolution::h(double t, double x, double y) const {
  if (x == 1.0 && y == 1.0) return ell(t);
  return characteristic(t).inverse(x, y);
}

double ArmsSolution::gen_fun(double t, double x, double y) const {
  if (!(y >= 0.0 && y <= 1.0)) throw DomainError("k_t is defined on the unit square");
  return measure_.k0(h(t, x, y), y) / scaling(t).alpha;
}

double ArmsSolution::second_moment(double t) const {
  check_time(t);
  if (t == t_gel_) return kInfinity;
  if (model_ == Model::SmoluchowskiArms && t > t_gel_) return kInfinity;
  const auto ch = characteristic(t);
  const double l = ell(t);
  const double slope = ch.derivative(l, 1.0);
  const double dk = measure_.k0(l, 1.0, 1);
  return dk / (ch.scale() * slope) + measure_.k0(l, 1.0) / ch.scale();
}

SolutionState ArmsSolution::state(double t) const {
  const auto p = scaling(t);
  SolutionState s;
  s.t = t;
  s.ell = ell(t);
  s.alpha = p.alpha;
  s.beta = p.beta;
  s.M = kUndefined;
  s.A = measure_.k0(s.ell, 1.0) / p.alpha;
  return s;
}

// --- gel-point derivative ---------------------------------------------------

GelProfile gel_profile(const MassMeasure& measure) {
  return {measure.name(), [measure](double s, int order) { return measure.g0_near_one(s, order); }};
}

GelProfile gel_profile_log() {
  return {"(1-x)log(1-x)+x", [](double s, int order) {
            const double ls = std::log(s);
            switch (order) {
              case 0:
                return s * ls + 1.0 - s;
              case 1:
                return -ls;
              default:
                return 1.0 / s;
            }
          }};
}

GelProfile gel_profile_sqrt_log() {
  return {"sqrt(1-x)log(1-x)+x", [](double s, int order) {
            const double ls = std::log(s);
            const double r = std::sqrt(s);
            switch (order) {
              case 0:
                return r * ls + 1.0 - s;
              case 1:
                return 1.0 - (1.0 + 0.5 * ls) / r;
              default:
                return -0.25 * ls / (s * r);
            }
          }};
}

GelProfile gel_profile_sqrt_power(double alpha) {
  if (!(alpha > 0.0)) throw DomainError("profile exponent alpha must be positive");
  std::ostringstream name;
  name << "1-sqrt(1-x^" << 2.0 * alpha << ")";
  return {name.str(), [alpha](double s, int order) {
            const double lx = std::log1p(-s);
            const double rest = -std::expm1(2.0 * alpha * lx);     // 1 - x^{2 alpha}
            const double w1 = 2.0 * alpha * std::exp((2.0 * alpha - 1.0) * lx);
            const double w2 = 2.0 * alpha * (2.0 * alpha - 1.0) * std::exp((2.0 * alpha - 2.0) * lx);
            const double r = std::sqrt(rest);
            switch (order) {
              case 0:
                return 1.0 - r;
              case 1:
                return 0.5 * w1 / r;
              default:
                return 0.25 * w1 * w1 / (rest * r) + 0.5 * w2 / r;
            }
          }};
}

std::string to_string(LimitVerdict verdict) {
  switch (verdict) {
    case LimitVerdict::Converged:
      return "converged";
    case LimitVerdict::Diverged:
      return "diverged";
    case LimitVerdict::Undefined:
      return "undefined";
  }
  return "undefined";
}

namespace {

constexpr double kStableTol = 1e-5;
constexpr double kBlowUp = 1e12;
constexpr std::size_t kTrendWindow = 8;

bool strictly_monotone(const std::vector<double>& v, std::size_t from) {
  bool up = true;
  bool down = true;
  for (std::size_t i = from + 1; i < v.size(); ++i) {
    up = up && v[i] > v[i - 1];
    down = down && v[i] < v[i - 1];
  }
  return up || down;
}

}  // namespace

LimitEstimate mass_right_derivative_at_gel(const GelProfile& profile) {
  LimitEstimate est;
  for (int k = 10; k <= 40; ++k) {
    const double s = std::ldexp(1.0, -k);
    const double d1 = profile.near_one(s, 1);
    const double d2 = profile.near_one(s, 2);
    est.s.push_back(s);
    est.sequence.push_back(-(d1 * d1 * d1) / (d1 + (1.0 - s) * d2));
  }
  const auto& v = est.sequence;
  const std::size_t n = v.size();
  if (std::any_of(v.begin(), v.end(), [](double x) { return std::isnan(x); })) return est;

  const double last = v[n - 1];
  const double sign = last < v[n - 2] ? -1.0 : 1.0;
  if ((std::isinf(last) || std::abs(last) > kBlowUp) && strictly_monotone(v, n - kTrendWindow)) {
    est.verdict = LimitVerdict::Diverged;
    est.value = sign * kInfinity;
    return est;
  }
  auto close = [](double a, double b) { return std::abs(a - b) <= kStableTol * std::max(1.0, std::abs(b)); };
  if (close(v[n - 2], v[n - 1]) && close(v[n - 3], v[n - 2])) {
    est.verdict = LimitVerdict::Converged;
    est.value = last;
    return est;
  }
  // Slow (logarithmic) blow-up: monotone tail whose increments do not shrink.
  bool growing = strictly_monotone(v, n - kTrendWindow);
  for (std::size_t i = n - kTrendWindow + 2; growing && i < n; ++i) {
    growing = std::abs(v[i] - v[i - 1]) >= std::abs(v[i - 1] - v[i - 2]);
  }
  if (growing) {
    est.verdict = LimitVerdict::Diverged;
    est.value = sign * kInfinity;
  }
  return est;
}

LimitEstimate mass_right_derivative_at_gel(const MassMeasure& measure) {
  const double K = measure.moments().K;
  if (!(K > 0.0) || std::isinf(K)) throw DomainError("the gel-point derivative needs 0 < T_gel < inf");
  return mass_right_derivative_at_gel(gel_profile(measure));
}

// --- asymptotics ------------------------------------------------------------

AsymptoticsReport asymptotics_report(const ClassicSolution& solution, double t_first, double t_last,
                                     double tol) {
  if (!(t_first > 0.0) || !(t_last >= t_first)) throw DomainError("need 0 < t_first <= t_last");
  const auto& measure = solution.measure();
  const auto mom = measure.moments();
  AsymptoticsReport rep;
  rep.model = solution.model();
  rep.m0 = mom.m0;

  const double start = std::max(t_first, 2.0 * solution.gel_time());
  for (double t = start; t <= t_last * (1.0 + 1e-12); t *= 2.0) rep.t.push_back(t);
  if (rep.t.size() < 2) rep.t = {start, 2.0 * start};

  std::vector<double> masses;
  for (double t : rep.t) masses.push_back(solution.mass(t));
  const std::size_t n = masses.size();
  rep.fitted_exponent = std::log(masses[n - 1] / masses[n - 2]) / std::log(rep.t[n - 1] / rep.t[n - 2]);

  if (solution.model() == Model::Smoluchowski) {
    rep.statistic = "1/(t M_t)";
    rep.rate = "1/(t M_t) -> m0";
    rep.constant = mom.m0;
    for (std::size_t i = 0; i < n; ++i) rep.values.push_back(1.0 / (rep.t[i] * masses[i]));
  } else if (mom.m0 > 0.0) {
    rep.statistic = "M_t exp(m0 M0 t)";
    rep.rate = "M_t exp(m0 M0 t) -> m0 mu0({m0})";
    rep.constant = mom.m0 * measure.bottom_atom_weight();
    for (std::size_t i = 0; i < n; ++i) {
      rep.values.push_back(masses[i] * std::exp(mom.m0 * mom.M0 * rep.t[i]));
    }
  } else {
    rep.statistic = "M_t";
    rep.rate = "m0 = 0: M_t exp(eps t) -> +inf for every eps > 0; no limit constant";
    rep.values = masses;
  }
  if (std::isfinite(rep.constant)) {
    rep.consistent = std::abs(rep.values.back() - rep.constant) <= tol * std::max(1.0, rep.constant);
  }
  return rep;
}

// --- integrability ----------------------------------------------------------

IntegrabilityStudy mass_square_integrability(const ClassicSolution& solution, double upper, double tol,
                                             int max_exponent) {
  if (!(upper > 0.0) || !std::isfinite(upper)) throw DomainError("upper limit must be positive");
  // int M_s^2 ds over [a, b] in the variable u = ln s
  auto piece = [&](double a, double b) {
    auto f = [&](double u) {
      const double s = std::exp(u);
      const double M = solution.mass(s);
      return M * M * s;
    };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, std::log(a), std::log(b), 10,
                                                                          1e-10);
  };
  IntegrabilityStudy st;
  double total = 0.0;
  double prev = upper;
  for (int k = 1; k <= max_exponent; ++k) {
    const double delta = std::pow(10.0, -k);
    if (delta >= upper) continue;
    const double add = piece(delta, prev);
    total += add;
    st.delta.push_back(delta);
    st.integral.push_back(total);
    if (st.integral.size() >= 2) {
      st.last_difference = add;
      if (add < tol) {
        st.converged = true;
        break;
      }
    }
    prev = delta;
  }
  return st;
}

}  // namespace gelsolve
