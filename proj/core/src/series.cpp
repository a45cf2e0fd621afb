#include "gelsolve/series.hpp"

#include <cmath>
#include <cstdint>

#include "gelsolve/errors.hpp"

namespace gelsolve {

namespace {

PowerSeries g0_series(const MassMeasure& measure, std::size_t order) {
  const auto w = measure.lattice_weights(order);
  auto g = PowerSeries::zero(order);
  for (std::size_t m = 1; m <= order; ++m) g[m] = static_cast<double>(m) * w[m];
  return g;
}

// q with phi_t(x) = x / q(x); all coefficients are nonnegative.
PowerSeries inverse_scale_series(Model model, const MassMeasure& measure, double t, std::size_t order,
                                 const SolverConfig& cfg) {
  if (is_arms(model)) throw ModelError("series concentrations cover the classical models");
  if (order < 1) throw DomainError("series order must be at least 1");
  auto exponent = ps_scale(g0_series(measure, order), t);
  exponent[0] -= ClassicCharacteristic::at(model, measure, t, cfg).log_scale();
  return ps_exp(exponent);
}

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b, std::size_t max_index) {
  std::vector<double> out(max_index + 1, 0.0);
  for (std::size_t i = 0; i < a.size() && i <= max_index; ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= max_index; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

PowerSeries characteristic_series(Model model, const MassMeasure& measure, double t, std::size_t order,
                                  const SolverConfig& cfg) {
  const auto inv = ps_reciprocal(inverse_scale_series(model, measure, t, order, cfg));
  auto phi = PowerSeries::zero(order);
  for (std::size_t k = 1; k <= order; ++k) phi[k] = inv[k - 1];
  return phi;
}

std::vector<double> concentrations(Model model, const MassMeasure& measure, double t, std::size_t order,
                                   const SolverConfig& cfg) {
  const auto h = ps_lagrange(inverse_scale_series(model, measure, t, order, cfg));
  const auto g = ps_compose(g0_series(measure, order), h);
  std::vector<double> c(order + 1, 0.0);
  for (std::size_t m = 1; m <= order; ++m) c[m] = g[m] / static_cast<double>(m);
  return c;
}

double arms_factorial_ratio(int a, int m) {
  if (a < 0 || m < 2) throw DomainError("factorial ratio needs a >= 0 and m >= 2");
  if (a + m <= 20) {
    auto fact = [](int n) {
      std::uint64_t f = 1;
      for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
      return f;
    };
    return static_cast<double>(fact(a + m - 2)) /
           (static_cast<double>(fact(a)) * static_cast<double>(fact(m)));
  }
  return std::exp(std::lgamma(a + m - 1.0) - std::lgamma(a + 1.0) - std::lgamma(m + 1.0));
}

ArmsConcentrations arms_concentrations(const ArmLaw& mu, double alpha, double beta, int a_max, int m_max) {
  if (a_max < 0 || m_max < 1) throw DomainError("need a_max >= 0 and m_max >= 1");
  if (!(alpha >= 1.0) || !(beta >= 0.0)) throw DomainError("need alpha >= 1 and beta >= 0");
  const NuMeasure nu = nu_from_mu(mu);
  ArmsConcentrations out;
  out.a_max = a_max;
  out.m_max = m_max;
  out.alpha = alpha;
  out.beta = beta;
  out.degenerate = nu.degenerate();
  const auto width = static_cast<std::size_t>(a_max + 1);
  out.values.assign(width * static_cast<std::size_t>(m_max), 0.0);

  // m = 1: particles that have not coagulated yet, c_t(a,1) = mu(a) alpha^{-a}.
  for (const auto& [a, w] : mu) {
    if (a <= a_max) out.values[static_cast<std::size_t>(a)] = w * std::pow(alpha, -a);
  }
  if (out.degenerate) return out;

  const std::size_t top = static_cast<std::size_t>(a_max + m_max);
  std::vector<double> power = nu.values();  // nu^{*m}
  power.resize(top + 1, 0.0);
  for (int m = 2; m <= m_max; ++m) {
    power = convolve(power, nu.values(), top);
    const double bm = std::pow(beta, m - 1);
    for (int a = 0; a <= a_max; ++a) {
      const double conv = power[static_cast<std::size_t>(a + m - 2)];
      if (conv == 0.0) continue;
      out.values[static_cast<std::size_t>(m - 1) * width + static_cast<std::size_t>(a)] =
          arms_factorial_ratio(a, m) * bm * std::pow(alpha, -a) * conv;
    }
  }
  return out;
}

double extinction_root(const ArmMeasure& measure, const SolverConfig& cfg) {
  const double A0 = measure.A0();
  if (measure.K() <= A0) return 1.0;
  auto f = [&](double x) { return measure.k0(x, 1.0) - A0 * x; };
  if (f(0.0) <= 0.0) return 0.0;
  // f is convex with f(1) = 0 and f'(1) > 0: the smallest root lies left of argmin f.
  const double argmin = bisect([&](double x) { return measure.k0(x, 1.0, 1) - A0; }, 0.0, 1.0, cfg.root_options());
  return bisect(f, 0.0, argmin, cfg.root_options());
}

double tangency_point(const ArmMeasure& measure, const SolverConfig& cfg) {
  if (measure.K() <= measure.A0()) return 1.0;
  const double g0 = measure.k0(0.0, 1.0, 1) == 0.0 ? -kInfinity : tangent_root(measure, 0.0);
  if (g0 >= 0.0) return 0.0;
  return tangent_root_inverse(measure, 0.0, cfg);
}

LimitingConcentrations limiting_concentrations(Model model, const ArmMeasure& measure, int m_max,
                                               const SolverConfig& cfg) {
  if (!is_arms(model)) throw ModelError("limiting concentrations are defined for the arms models");
  if (m_max < 2) throw DomainError("m_max must be at least 2");
  const ArmLaw mu = measure.arm_law();
  const NuMeasure nu = nu_from_mu(mu);
  LimitingConcentrations lim;
  lim.model = model;
  lim.T_gel = gel_time(model, measure);
  lim.degenerate = nu.degenerate();
  const double A0 = measure.A0();

  double ratio = 0.0;  // per-generation factor replacing beta_t in the limit
  if (model == Model::FloryArms) {
    lim.p_or_c = extinction_root(measure, cfg);
    ratio = 1.0 / A0;
  } else {
    lim.p_or_c = tangency_point(measure, cfg);
    if (std::isinf(lim.T_gel)) {
      lim.beta_inf = 1.0 / A0;
    } else {
      const double slope = measure.k0(lim.p_or_c, 1.0, 1);
      lim.beta_inf = slope > 0.0 ? 1.0 / slope : kInfinity;
    }
    ratio = lim.beta_inf;
  }
  lim.M_inf = 0.0;
  for (const auto& [a, w] : mu) lim.M_inf += w * (a == 0 ? 1.0 : std::pow(lim.p_or_c, a));

  lim.c_inf.assign(static_cast<std::size_t>(m_max) + 1, 0.0);
  lim.c_inf[0] = lim.c_inf[1] = kUndefined;
  if (lim.degenerate) return lim;
  const auto top = static_cast<std::size_t>(m_max);
  std::vector<double> power = nu.values();
  power.resize(top + 1, 0.0);
  for (int m = 2; m <= m_max; ++m) {
    power = convolve(power, nu.values(), top);
    lim.c_inf[static_cast<std::size_t>(m)] = std::pow(ratio, m - 1) * power[static_cast<std::size_t>(m - 2)] /
                                            (static_cast<double>(m) * (m - 1));
  }
  return lim;
}

}  // namespace gelsolve
