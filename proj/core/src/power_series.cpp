#include "gelsolve/power_series.hpp"

#include <algorithm>
#include <cmath>

#include "gelsolve/errors.hpp"

namespace gelsolve {

PowerSeries::PowerSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

PowerSeries PowerSeries::zero(std::size_t order) { return PowerSeries(std::vector<double>(order + 1, 0.0)); }

PowerSeries PowerSeries::constant(double c, std::size_t order) {
  auto p = zero(order);
  p.coeffs_[0] = c;
  return p;
}

PowerSeries PowerSeries::identity(std::size_t order) {
  auto p = zero(order);
  if (order >= 1) p.coeffs_[1] = 1.0;
  return p;
}

PowerSeries PowerSeries::truncated(std::size_t order) const {
  std::vector<double> c(order + 1, 0.0);
  std::copy_n(coeffs_.begin(), std::min(coeffs_.size(), order + 1), c.begin());
  return PowerSeries(std::move(c));
}

double PowerSeries::evaluate(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

PowerSeries ps_add(const PowerSeries& a, const PowerSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  auto out = PowerSeries::zero(n);
  for (std::size_t i = 0; i <= n; ++i) out[i] = a[i] + b[i];
  return out;
}

PowerSeries ps_scale(const PowerSeries& a, double s) {
  auto out = a;
  for (std::size_t i = 0; i <= a.order(); ++i) out[i] *= s;
  return out;
}

PowerSeries ps_mul(const PowerSeries& a, const PowerSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  auto out = PowerSeries::zero(n);
  for (std::size_t i = 0; i <= n; ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    for (std::size_t j = 0; i + j <= n; ++j) out[i + j] += ai * b[j];
  }
  return out;
}

PowerSeries ps_exp(const PowerSeries& a) {
  if (!std::isfinite(a[0])) throw DomainError("ps_exp needs a finite constant term");
  const std::size_t n = a.order();
  auto b = PowerSeries::zero(n);
  b[0] = std::exp(a[0]);
  for (std::size_t k = 1; k <= n; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a[j] * b[k - j];
    b[k] = s / static_cast<double>(k);
  }
  return b;
}

PowerSeries ps_reciprocal(const PowerSeries& a) {
  if (a[0] == 0.0) throw DomainError("series with zero constant term has no reciprocal");
  const std::size_t n = a.order();
  auto b = PowerSeries::zero(n);
  b[0] = 1.0 / a[0];
  for (std::size_t k = 1; k <= n; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += a[j] * b[k - j];
    b[k] = -s / a[0];
  }
  return b;
}

PowerSeries ps_compose(const PowerSeries& f, const PowerSeries& g) {
  if (g[0] != 0.0) throw DomainError("inner series of a composition must vanish at 0");
  const std::size_t n = std::min(f.order(), g.order());
  auto out = PowerSeries::constant(f[n], n);
  for (std::size_t k = n; k-- > 0;) {
    out = ps_mul(out, g);
    out[0] += f[k];
  }
  return out;
}

PowerSeries ps_lagrange(const PowerSeries& q) {
  if (q[0] == 0.0) throw DomainError("Lagrange inversion needs q(0) != 0");
  const std::size_t n = q.order();
  auto h = PowerSeries::zero(n);
  auto power = PowerSeries::constant(1.0, n);  // q^k
  for (std::size_t k = 1; k <= n; ++k) {
    power = ps_mul(power, q);
    h[k] = power[k - 1] / static_cast<double>(k);
  }
  return h;
}

PowerSeries ps_revert(const PowerSeries& phi) {
  if (phi[0] != 0.0) throw DomainError("series reversion needs phi(0) = 0");
  if (phi[1] == 0.0) throw DomainError("series reversion needs a nonzero linear coefficient");
  const std::size_t n = phi.order();
  // phi(w) = w psi(w); h = x / psi(h)
  std::vector<double> psi(n + 1, 0.0);
  for (std::size_t k = 1; k <= n; ++k) psi[k - 1] = phi[k];
  return ps_lagrange(ps_reciprocal(PowerSeries(std::move(psi))));
}

}  // namespace gelsolve
