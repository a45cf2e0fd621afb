#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gelsolve/errors.hpp"

namespace gelsolve {

/// Stopping rule shared by the bracketing solvers.
///
/// Iteration stops when the bracket width drops below
/// x_tol * min(1, |midpoint|) (absolute near 1, relative for small roots), when
/// |f(mid)| <= f_tol, or when the bracket cannot be split further in double
/// precision.
struct RootOptions {
  double x_tol = 1e-12;
  double f_tol = 0.0;
  int max_iter = 200;
};

namespace detail {

inline bool bracket_small_enough(double lo, double hi, double x_tol) {
  const double mid = 0.5 * (lo + hi);
  const double scale = std::min(1.0, std::abs(mid));
  return hi - lo <= x_tol * std::max(scale, std::numeric_limits<double>::min());
}

inline void not_bracketed(double lo, double hi, double flo, double fhi) {
  std::ostringstream os;
  os << "root not bracketed on [" << lo << ", " << hi << "]: f = " << flo << ", " << fhi;
  throw SolverError(os.str());
}

inline void no_convergence(int iters, double lo, double hi) {
  std::ostringstream os;
  os << "bracketing solver did not converge after " << iters << " iterations (bracket [" << lo
     << ", " << hi << "])";
  throw SolverError(os.str());
}

}  // namespace detail

/// Bisection for a sign change of f on [lo, hi]. Either orientation is
/// accepted. Uses geometric midpoints while the bracket spans several
/// octaves of positive numbers so that roots near 0 resolve in relative terms.
template <class F>
double bisect(F&& f, double lo, double hi, const RootOptions& opt = {}) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) detail::not_bracketed(lo, hi, flo, fhi);
  const bool increasing = fhi > flo;
  for (int it = 0; it < opt.max_iter; ++it) {
    double mid = (lo > 0.0 && hi > 8.0 * lo) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) return 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0 || std::abs(fm) <= opt.f_tol) return mid;
    if ((fm < 0.0) == increasing) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (detail::bracket_small_enough(lo, hi, opt.x_tol)) return 0.5 * (lo + hi);
  }
  detail::no_convergence(opt.max_iter, lo, hi);
  return 0.5 * (lo + hi);
}

/// Newton iteration safeguarded by a bisection bracket. Falls back to a
/// bisection step whenever the Newton update leaves the bracket or stalls.
template <class F, class DF>
double newton_bisect(F&& f, DF&& df, double lo, double hi, const RootOptions& opt = {}) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) detail::not_bracketed(lo, hi, flo, fhi);
  // orient so that f(a) < 0 < f(b)
  double a = flo < 0.0 ? lo : hi;
  double b = flo < 0.0 ? hi : lo;
  double x = 0.5 * (lo + hi);
  double dx_old = std::abs(hi - lo);
  double dx = dx_old;
  double fx = f(x);
  double dfx = df(x);
  for (int it = 0; it < opt.max_iter; ++it) {
    const bool newton_leaves = ((x - b) * dfx - fx) * ((x - a) * dfx - fx) > 0.0;
    const bool newton_slow = std::abs(2.0 * fx) > std::abs(dx_old * dfx);
    dx_old = dx;
    if (newton_leaves || newton_slow || !std::isfinite(dfx) || dfx == 0.0) {
      dx = 0.5 * (b - a);
      x = a + dx;
    } else {
      dx = fx / dfx;
      x -= dx;
    }
    if (std::abs(dx) <= opt.x_tol * std::max(std::min(1.0, std::abs(x)),
                                             std::numeric_limits<double>::min())) {
      return x;
    }
    fx = f(x);
    if (fx == 0.0 || std::abs(fx) <= opt.f_tol) return x;
    dfx = df(x);
    if (fx < 0.0) {
      a = x;
    } else {
      b = x;
    }
    if (detail::bracket_small_enough(std::min(a, b), std::max(a, b), opt.x_tol)) return x;
  }
  detail::no_convergence(opt.max_iter, std::min(a, b), std::max(a, b));
  return x;
}

}  // namespace gelsolve
