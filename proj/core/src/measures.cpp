#include "gelsolve/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gelsolve/errors.hpp"

namespace gelsolve {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream os;
    os << what << " = " << x << " lies outside [0,1]";
    throw DomainError(os.str());
  }
}

void check_order(int order) {
  if (order < 0 || order > 2) throw DomainError("derivative order must be 0, 1 or 2");
}

// x^exponent with the conventions 0^0 = 1 and 0^(negative) = +inf.
double power_term(double x, double exponent) {
  if (x == 0.0) {
    if (exponent == 0.0) return 1.0;
    return exponent > 0.0 ? 0.0 : kInfinity;
  }
  return std::pow(x, exponent);
}

// Discrete g0 and derivatives at x, with x^m supplied by `xpow`.
template <class XPow>
double discrete_g0(const std::vector<MassAtom>& atoms, int order, XPow&& xpow) {
  double sum = 0.0;
  for (const auto& [m, w] : atoms) {
    const double coeff = order == 0 ? m * w : (order == 1 ? m * m * w : m * m * (m - 1.0) * w);
    if (coeff == 0.0) continue;
    sum += coeff * xpow(m - order);
  }
  return sum;
}

// Exponential density: g0 = (1+L)^-2 with L = -ln x.
double exponential_g0(double x, double lambda, int order) {
  const double u = 1.0 + lambda;
  switch (order) {
    case 0:
      return 1.0 / (u * u);
    case 1:
      if (x == 0.0) return kInfinity;
      return 2.0 / (u * u * u) / x;
    default:
      if (x == 0.0) return kInfinity;
      return 2.0 / (x * x) * (3.0 / (u * u * u * u) - 1.0 / (u * u * u));
  }
}

// Power-law density m^{-p}: g0 = Gamma(2-p) L^{p-2}.
double power_law_g0(double p, double x, double lambda, int order) {
  switch (order) {
    case 0:
      if (lambda == 0.0) return kInfinity;
      return std::tgamma(2.0 - p) * std::pow(lambda, p - 2.0);
    case 1:
      if (lambda == 0.0 || x == 0.0) return kInfinity;
      return std::tgamma(3.0 - p) * std::pow(lambda, p - 3.0) / x;
    default:
      if (lambda == 0.0 || x == 0.0) return kInfinity;
      return std::tgamma(3.0 - p) / (x * x) *
             ((3.0 - p) * std::pow(lambda, p - 4.0) - std::pow(lambda, p - 3.0));
  }
}

}  // namespace

MassMeasure MassMeasure::monodisperse() { return MassMeasure(Monodisperse{}); }

MassMeasure MassMeasure::discrete(std::vector<MassAtom> atoms) {
  if (atoms.empty()) throw DomainError("discrete measure needs at least one atom");
  for (const auto& [m, w] : atoms) {
    if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("atom masses must be positive and finite");
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("atom weights must be positive and finite");
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const MassAtom& a, const MassAtom& b) { return a.mass < b.mass; });
  // merge repeated masses
  std::vector<MassAtom> merged;
  for (const auto& atom : atoms) {
    if (!merged.empty() && merged.back().mass == atom.mass) {
      merged.back().weight += atom.weight;
    } else {
      merged.push_back(atom);
    }
  }
  return MassMeasure(DiscreteMass{std::move(merged)});
}

MassMeasure MassMeasure::exponential() { return MassMeasure(ExponentialDensity{}); }

MassMeasure MassMeasure::power_law(double p) {
  // <mu0, m ^ 1> diverges at p = 1 (the tail integral of m^{-1}).
  if (!(p > 1.0 && p < 2.0)) throw DomainError("power-law exponent must lie in (1,2)");
  return MassMeasure(PowerLawDensity{p});
}

std::string MassMeasure::name() const {
  return std::visit(overloaded{
                        [](const Monodisperse&) -> std::string { return "monodisperse"; },
                        [](const DiscreteMass&) -> std::string { return "discrete"; },
                        [](const ExponentialDensity&) -> std::string { return "exponential"; },
                        [](const PowerLawDensity& d) -> std::string {
                          std::ostringstream os;
                          os << "power-law(p=" << d.p << ")";
                          return os.str();
                        },
                    },
                    kind_);
}

Moments MassMeasure::moments() const {
  return std::visit(overloaded{
                        [](const Monodisperse&) { return Moments{1.0, 1.0, 1.0}; },
                        [](const DiscreteMass& d) {
                          Moments mom{0.0, 0.0, d.atoms.front().mass};
                          for (const auto& [m, w] : d.atoms) {
                            mom.M0 += m * w;
                            mom.K += m * m * w;
                          }
                          return mom;
                        },
                        [](const ExponentialDensity&) { return Moments{1.0, 2.0, 0.0}; },
                        [](const PowerLawDensity&) { return Moments{kInfinity, kInfinity, 0.0}; },
                    },
                    kind_);
}

double MassMeasure::g0(double x, int order) const {
  check_unit(x, "x");
  check_order(order);
  const double lambda = x == 0.0 ? kInfinity : -std::log(x);
  return std::visit(
      overloaded{
          [&](const Monodisperse&) { return order == 0 ? x : (order == 1 ? 1.0 : 0.0); },
          [&](const DiscreteMass& d) {
            return discrete_g0(d.atoms, order, [x](double e) { return power_term(x, e); });
          },
          [&](const ExponentialDensity&) { return exponential_g0(x, lambda, order); },
          [&](const PowerLawDensity& d) { return power_law_g0(d.p, x, lambda, order); },
      },
      kind_);
}

double MassMeasure::x_g0_prime(double x) const {
  check_unit(x, "x");
  return std::visit(overloaded{
                        [&](const Monodisperse&) { return x; },
                        [&](const DiscreteMass& d) {
                          double sum = 0.0;
                          for (const auto& [m, w] : d.atoms) sum += m * m * w * power_term(x, m);
                          return sum;
                        },
                        [&](const ExponentialDensity&) {
                          if (x == 0.0) return 0.0;
                          const double u = 1.0 - std::log(x);
                          return 2.0 / (u * u * u);
                        },
                        [&](const PowerLawDensity& d) {
                          if (x == 0.0) return 0.0;
                          if (x == 1.0) return kInfinity;
                          return std::tgamma(3.0 - d.p) * std::pow(-std::log(x), d.p - 3.0);
                        },
                    },
                    kind_);
}

double MassMeasure::g0_log(double lambda) const {
  if (!(lambda >= 0.0)) throw DomainError("lambda = -ln x must be >= 0");
  return std::visit(overloaded{
                        [&](const Monodisperse&) { return std::exp(-lambda); },
                        [&](const DiscreteMass& d) {
                          double sum = 0.0;
                          for (const auto& [m, w] : d.atoms) sum += m * w * std::exp(-m * lambda);
                          return sum;
                        },
                        [&](const ExponentialDensity&) {
                          return 1.0 / ((1.0 + lambda) * (1.0 + lambda));
                        },
                        [&](const PowerLawDensity& d) {
                          if (lambda == 0.0) return kInfinity;
                          return std::tgamma(2.0 - d.p) * std::pow(lambda, d.p - 2.0);
                        },
                    },
                    kind_);
}

double MassMeasure::x_g0_prime_log(double lambda) const {
  if (!(lambda >= 0.0)) throw DomainError("lambda = -ln x must be >= 0");
  return std::visit(overloaded{
                        [&](const Monodisperse&) { return std::exp(-lambda); },
                        [&](const DiscreteMass& d) {
                          double sum = 0.0;
                          for (const auto& [m, w] : d.atoms) sum += m * m * w * std::exp(-m * lambda);
                          return sum;
                        },
                        [&](const ExponentialDensity&) {
                          const double u = 1.0 + lambda;
                          return 2.0 / (u * u * u);
                        },
                        [&](const PowerLawDensity& d) {
                          if (lambda == 0.0) return kInfinity;
                          return std::tgamma(3.0 - d.p) * std::pow(lambda, d.p - 3.0);
                        },
                    },
                    kind_);
}

double MassMeasure::g0_near_one(double s, int order) const {
  check_unit(s, "1 - x");
  check_order(order);
  const double x = 1.0 - s;
  const double log_x = std::log1p(-s);
  const double lambda = -log_x;
  return std::visit(
      overloaded{
          [&](const Monodisperse&) { return order == 0 ? x : (order == 1 ? 1.0 : 0.0); },
          [&](const DiscreteMass& d) {
            return discrete_g0(d.atoms, order, [&](double e) {
              if (s == 1.0) return power_term(0.0, e);
              return std::exp(e * log_x);
            });
          },
          [&](const ExponentialDensity&) { return exponential_g0(x, lambda, order); },
          [&](const PowerLawDensity& d) { return power_law_g0(d.p, x, lambda, order); },
      },
      kind_);
}

double MassMeasure::bottom_atom_weight() const {
  return std::visit(overloaded{
                        [](const Monodisperse&) { return 1.0; },
                        [](const DiscreteMass& d) { return d.atoms.front().weight; },
                        [](const ExponentialDensity&) { return 0.0; },
                        [](const PowerLawDensity&) { return 0.0; },
                    },
                    kind_);
}

bool MassMeasure::on_integer_lattice() const {
  return std::visit(overloaded{
                        [](const Monodisperse&) { return true; },
                        [](const DiscreteMass& d) {
                          return std::all_of(d.atoms.begin(), d.atoms.end(), [](const MassAtom& a) {
                            return std::abs(a.mass - std::round(a.mass)) <= 1e-12 * a.mass;
                          });
                        },
                        [](const ExponentialDensity&) { return false; },
                        [](const PowerLawDensity&) { return false; },
                    },
                    kind_);
}

std::vector<double> MassMeasure::lattice_weights(std::size_t max_mass) const {
  if (!on_integer_lattice()) {
    throw DomainError("measure '" + name() + "' is not supported on the integer mass lattice");
  }
  std::vector<double> w(max_mass + 1, 0.0);
  if (std::holds_alternative<Monodisperse>(kind_)) {
    if (max_mass >= 1) w[1] = 1.0;
    return w;
  }
  for (const auto& [m, weight] : std::get<DiscreteMass>(kind_).atoms) {
    const auto index = static_cast<std::size_t>(std::llround(m));
    if (index <= max_mass) w[index] += weight;
  }
  return w;
}

// ---------------------------------------------------------------------------

ArmMeasure ArmMeasure::from_atoms(std::vector<ArmAtom> atoms) {
  ArmMeasure out;
  std::map<std::pair<int, int>, double> merged;
  for (const auto& [a, m, w] : atoms) {
    if (a < 0) throw DomainError("arm counts must be non-negative");
    if (m < 1) throw DomainError("arm-model masses must be >= 1");
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("arm-model weights must be finite and >= 0");
    if (w > 0.0) merged[{m, a}] += w;
  }
  for (const auto& [key, w] : merged) {
    const auto [m, a] = key;
    out.atoms_.push_back({a, m, w});
    out.total_ += w;
    out.a0_ += a * w;
    out.k_ += static_cast<double>(a) * (a - 1) * w;
    out.max_arms_ = std::max(out.max_arms_, a);
    out.max_mass_ = std::max(out.max_mass_, m);
  }
  if (!(out.a0_ > 0.0)) throw DomainError("arm measure must carry a positive number of arms (A0 > 0)");
  return out;
}

ArmMeasure ArmMeasure::monodisperse(const ArmLaw& mu) {
  std::vector<ArmAtom> atoms;
  atoms.reserve(mu.size());
  for (const auto& [a, w] : mu) atoms.push_back({a, 1, w});
  return from_atoms(std::move(atoms));
}

ArmLaw ArmMeasure::arm_law() const {
  if (!is_monodisperse()) throw DomainError("arm measure is not monodisperse (c0(a,m) = mu(a) 1{m=1})");
  ArmLaw mu;
  for (const auto& [a, m, w] : atoms_) mu[a] += w;
  return mu;
}

double ArmMeasure::k0(double x, double y, int x_order) const {
  check_unit(x, "x");
  check_unit(y, "y");
  check_order(x_order);
  double sum = 0.0;
  for (const auto& [a, m, w] : atoms_) {
    const double falling = x_order == 0   ? a
                           : x_order == 1 ? static_cast<double>(a) * (a - 1)
                                          : static_cast<double>(a) * (a - 1) * (a - 2);
    if (falling == 0.0) continue;
    const int e = a - 1 - x_order;
    sum += falling * w * std::pow(x, e) * std::pow(y, m);
  }
  return sum;
}

// ---------------------------------------------------------------------------

NuMeasure::NuMeasure(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("nu weights must be finite and >= 0");
  }
  while (!values_.empty() && values_.back() == 0.0) values_.pop_back();
}

double NuMeasure::total() const noexcept {
  double sum = 0.0;
  for (double v : values_) sum += v;
  return sum;
}

NuMeasure nu_from_mu(const ArmLaw& mu) {
  int top = 0;
  for (const auto& [a, w] : mu) {
    if (a < 0) throw DomainError("arm counts must be non-negative");
    top = std::max(top, a);
  }
  std::vector<double> values(top > 0 ? static_cast<std::size_t>(top) : 0, 0.0);
  for (const auto& [a, w] : mu) {
    if (a >= 1) values[static_cast<std::size_t>(a - 1)] += a * w;
  }
  return NuMeasure(std::move(values));
}

std::vector<double> conv_power(const NuMeasure& nu, int m, std::size_t max_index) {
  if (m < 1) throw DomainError("convolution power must be >= 1");
  const auto& base = nu.values();
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < base.size(); ++j) {
    if (base[j] != 0.0) support.push_back(j);
  }
  std::vector<double> power(max_index + 1, 0.0);
  for (std::size_t j : support) {
    if (j <= max_index) power[j] = base[j];
  }
  std::vector<double> next(max_index + 1);
  for (int k = 1; k < m; ++k) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i <= max_index; ++i) {
      if (power[i] == 0.0) continue;
      for (std::size_t j : support) {
        if (i + j > max_index) break;
        next[i + j] += power[i] * base[j];
      }
    }
    power.swap(next);
  }
  return power;
}

}  // namespace gelsolve
