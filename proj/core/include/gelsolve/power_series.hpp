#pragma once

#include <cstddef>
#include <vector>

namespace gelsolve {

/// Truncated formal power series sum_{n<=N} c_n x^n. Every operation is exact
/// in the retained coefficients: nothing beyond x^N is ever needed.
class PowerSeries {
 public:
  explicit PowerSeries(std::vector<double> coeffs);
  static PowerSeries zero(std::size_t order);
  static PowerSeries constant(double c, std::size_t order);
  /// The series x.
  static PowerSeries identity(std::size_t order);

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  double operator[](std::size_t n) const noexcept { return n < coeffs_.size() ? coeffs_[n] : 0.0; }
  double& operator[](std::size_t n) { return coeffs_.at(n); }

  PowerSeries truncated(std::size_t order) const;
  double evaluate(double x) const;

 private:
  std::vector<double> coeffs_;
};

PowerSeries ps_add(const PowerSeries& a, const PowerSeries& b);
PowerSeries ps_scale(const PowerSeries& a, double s);
/// Cauchy product truncated at min(order(a), order(b)).
PowerSeries ps_mul(const PowerSeries& a, const PowerSeries& b);
/// exp(a), scaled by e^{a_0}; uses n b_n = sum_k k a_k b_{n-k}.
PowerSeries ps_exp(const PowerSeries& a);
/// 1/a; throws DomainError if a_0 = 0.
PowerSeries ps_reciprocal(const PowerSeries& a);
/// f(g(x)); requires g_0 = 0.
PowerSeries ps_compose(const PowerSeries& f, const PowerSeries& g);
/// The solution h of h = x q(h): h_n = (1/n) [w^{n-1}] q(w)^n (Lagrange).
/// Requires q_0 != 0.
PowerSeries ps_lagrange(const PowerSeries& q);
/// Compositional inverse of phi (phi_0 = 0, phi_1 != 0).
PowerSeries ps_revert(const PowerSeries& phi);

}  // namespace gelsolve
