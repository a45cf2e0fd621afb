#include "gelsolve/characteristics.hpp"

#include <cmath>
#include <sstream>

#include "gelsolve/errors.hpp"
#include "tangent.hpp"

namespace gelsolve {

std::string_view to_string(Model model) noexcept {
  switch (model) {
    case Model::Smoluchowski:
      return "smoluchowski";
    case Model::Flory:
      return "flory";
    case Model::SmoluchowskiArms:
      return "smoluchowski-arms";
    case Model::FloryArms:
      return "flory-arms";
  }
  return "unknown";
}

Model parse_model(std::string_view text) {
  for (Model m : {Model::Smoluchowski, Model::Flory, Model::SmoluchowskiArms, Model::FloryArms}) {
    if (text == to_string(m)) return m;
  }
  throw ConfigError("unknown model '" + std::string(text) +
                    "' (expected smoluchowski, flory, smoluchowski-arms or flory-arms)");
}

void SolverConfig::validate() const {
  if (!(root_tol > 0.0) || !std::isfinite(root_tol)) throw ConfigError("root_tol must be positive");
  if (!(ode_dt > 0.0) || !std::isfinite(ode_dt)) throw ConfigError("ode_dt must be positive");
  if (max_iter < 1) throw ConfigError("max_iter must be at least 1");
}

// --- gelation times -------------------------------------------------------

double gel_time(Model model, const MassMeasure& measure) {
  if (is_arms(model)) throw ModelError("arms models need an arm measure");
  const double K = measure.moments().K;
  return std::isinf(K) ? 0.0 : 1.0 / K;
}

double gel_time(Model model, const ArmMeasure& measure) {
  if (!is_arms(model)) throw ModelError("classical models need a mass measure");
  const double excess = measure.K() - measure.A0();
  return excess > 0.0 ? 1.0 / excess : kInfinity;
}

// --- classical critical points ---------------------------------------------

namespace {

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be finite and >= 0");
}

// Root of t x g0'(x) = 1 on (0,1); x g0'(x) is increasing.
double tangency_root(double t, const MassMeasure& measure, const SolverConfig& cfg) {
  return bisect([&](double x) { return t * measure.x_g0_prime(x) - 1.0; }, 0.0, 1.0,
                cfg.root_options());
}

}  // namespace

double ell_smolu_log(double t, const MassMeasure& measure, const SolverConfig& cfg) {
  check_time(t);
  if (t <= gel_time(Model::Smoluchowski, measure)) return 0.0;
  // t x g0'(x) decreases in lambda = -ln x; grow the bracket until it changes sign.
  auto f = [&](double lambda) { return t * measure.x_g0_prime_log(lambda) - 1.0; };
  double hi = 1.0;
  while (f(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e300) throw SolverError("could not bracket ell_t");
  }
  return bisect(f, 0.0, hi, cfg.root_options());
}

double ell_smolu(double t, const MassMeasure& measure, const SolverConfig& cfg) {
  return std::exp(-ell_smolu_log(t, measure, cfg));
}

double m_crit(double t, const MassMeasure& measure, const SolverConfig& cfg) {
  check_time(t);
  if (t <= gel_time(Model::Flory, measure)) {
    throw DomainError("m_t is defined only after the gelation time");
  }
  return tangency_root(t, measure, cfg);
}

double l_flory(double t, const MassMeasure& measure, const SolverConfig& cfg) {
  check_time(t);
  const double M0 = measure.moments().M0;
  if (std::isinf(M0)) {
    throw ModelError("Flory's model requires finite initial mass <mu0, m>");
  }
  if (t <= gel_time(Model::Flory, measure)) return 1.0;
  const double top = tangency_root(t, measure, cfg);
  // ln x + t (M0 - g0(x)) increases on [0, m_t]; the second root above m_t is not physical.
  return bisect([&](double x) { return std::log(x) + t * (M0 - measure.g0(x)); }, 0.0, top,
                cfg.root_options());
}

ClassicCharacteristic ClassicCharacteristic::at(Model model, const MassMeasure& measure, double t,
                                                const SolverConfig& cfg) {
  if (is_arms(model)) throw ModelError("arms models have a bivariate characteristic");
  check_time(t);
  ClassicCharacteristic c;
  c.measure_ = &measure;
  c.cfg_ = cfg;
  c.t_ = t;
  if (model == Model::Smoluchowski) {
    const double lambda = ell_smolu_log(t, measure, cfg);
    c.crest_ = std::exp(-lambda);
    c.anchor_ = c.crest_;
    c.anchor_mass_ = t == 0.0 ? 0.0 : measure.g0_log(lambda);
  } else {
    c.crest_ = l_flory(t, measure, cfg);
    c.anchor_ = 1.0;
    c.anchor_mass_ = measure.moments().M0;
  }
  return c;
}

double ClassicCharacteristic::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("phi_t is defined on [0,1]");
  if (t_ == 0.0 || x == 0.0) return x;
  return x / anchor_ * std::exp(t_ * (anchor_mass_ - measure_->g0(x)));
}

double ClassicCharacteristic::derivative(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("phi_t is defined on [0,1]");
  if (t_ == 0.0) return 1.0;
  const double g = measure_->g0(x);
  const double e = std::isinf(g) ? 0.0 : std::exp(t_ * (anchor_mass_ - g));
  return e / anchor_ * (1.0 - t_ * measure_->x_g0_prime(x));
}

double ClassicCharacteristic::inverse(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("h_t is defined on [0,1]");
  if (t_ == 0.0 || x == 0.0) return x;
  if (x >= (*this)(crest_)) return crest_;
  return bisect([&](double y) { return (*this)(y)-x; }, 0.0, crest_, cfg_.root_options());
}

double ClassicCharacteristic::log_scale() const noexcept {
  return t_ * anchor_mass_ - std::log(anchor_);
}

// --- arms models ------------------------------------------------------------

namespace detail {

double tangent(const ArmMeasure& measure, double x) {
  const double slope = measure.k0(x, 1.0, 1);
  if (slope == 0.0) return -kInfinity;
  return x - measure.k0(x, 1.0) / slope;
}

double tangent_inverse(const ArmMeasure& measure, double u, double tangent_at_one,
                       const RootOptions& opt) {
  if (u >= tangent_at_one) return 1.0;
  return newton_bisect(
      [&](double x) { return tangent(measure, x) - u; },
      [&](double x) {
        const double d1 = measure.k0(x, 1.0, 1);
        return measure.k0(x, 1.0) * measure.k0(x, 1.0, 2) / (d1 * d1);
      },
      0.0, 1.0, opt);
}

}  // namespace detail

double tangent_root(const ArmMeasure& measure, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("G is defined on [0,1]");
  const double g = detail::tangent(measure, x);
  if (std::isinf(g)) {
    std::ostringstream os;
    os << "G is undefined at x = " << x << " where k0'(x,1) = 0";
    throw DomainError(os.str());
  }
  return g;
}

double tangent_root_inverse(const ArmMeasure& measure, double u, const SolverConfig& cfg) {
  if (!(measure.K() > 0.0)) throw DomainError("H is undefined when k0'' vanishes identically");
  const double lo = detail::tangent(measure, 0.0);
  const double hi = detail::tangent(measure, 1.0);
  if (!(u >= lo && u < hi)) {
    std::ostringstream os;
    os << "H is defined on [G(0), G(1)) = [" << lo << ", " << hi << "); got u = " << u;
    throw DomainError(os.str());
  }
  return detail::tangent_inverse(measure, u, hi, cfg.root_options());
}

double l_flory_arms(double t, const ArmMeasure& measure, const SolverConfig& cfg) {
  check_time(t);
  if (t <= gel_time(Model::FloryArms, measure)) return 1.0;
  const double scale = 1.0 + t * measure.A0();
  const ArmsCharacteristic phi(measure, scale, t / scale, cfg);
  return phi.inverse(1.0, 1.0);
}

ArmsCharacteristic::ArmsCharacteristic(const ArmMeasure& measure, double scale, double slope,
                                       const SolverConfig& cfg)
    : measure_(&measure), scale_(scale), slope_(slope), cfg_(cfg) {
  if (!(scale >= 1.0) || !(slope >= 0.0)) {
    throw DomainError("arms characteristic needs scale >= 1 and slope >= 0");
  }
}

double ArmsCharacteristic::operator()(double x, double y) const {
  return scale_ * (x - slope_ * measure_->k0(x, y));
}

double ArmsCharacteristic::derivative(double x, double y) const {
  return scale_ * (1.0 - slope_ * measure_->k0(x, y, 1));
}

double ArmsCharacteristic::peak(double y) const {
  auto excess = [&](double x) { return slope_ * measure_->k0(x, y, 1) - 1.0; };
  if (excess(1.0) <= 0.0) return 1.0;
  if (excess(0.0) >= 0.0) return 0.0;
  return bisect(excess, 0.0, 1.0, cfg_.root_options());
}

double ArmsCharacteristic::inverse(double x, double y) const {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("h_t is defined on [0,1]");
  const double top = peak(y);
  if (x >= (*this)(top, y)) return top;
  if (x <= (*this)(0.0, y)) return 0.0;
  return bisect([&](double z) { return (*this)(z, y) - x; }, 0.0, top, cfg_.root_options());
}

}  // namespace gelsolve
