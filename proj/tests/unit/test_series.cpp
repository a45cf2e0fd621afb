#include <cmath>

#include "doctest.h"
#include "gelsolve/errors.hpp"
#include "gelsolve/models.hpp"
#include "gelsolve/series.hpp"

using namespace gelsolve;

namespace {

const ArmLaw kMu{{0, 0.5}, {1, 0.25}, {3, 0.25}};

// m^{m-2} t^{m-1} e^{-mt} / m!, evaluated in logs.
double tree_law(int m, double t) {
  return std::exp((m - 2) * std::log(m) + (m - 1) * std::log(t) - m * t - std::lgamma(m + 1.0));
}

// Direct RK4 on the monodisperse Smoluchowski system truncated at n (no reactions past n).
std::vector<double> brute_smoluchowski(int n, double t_end, double dt) {
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  c[1] = 1.0;
  auto rhs = [n](const std::vector<double>& x) {
    std::vector<double> d(x.size(), 0.0);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; i + j <= n; ++j) {
        const double r = i * j * x[i] * x[j];
        d[i + j] += 0.5 * r;
        d[i] -= r;
      }
    return d;
  };
  const int steps = static_cast<int>(std::lround(t_end / dt));
  for (int s = 0; s < steps; ++s) {
    auto axpy = [&](const std::vector<double>& k, double h) {
      auto y = c;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] += h * k[i];
      return y;
    };
    const auto k1 = rhs(c), k2 = rhs(axpy(k1, dt / 2)), k3 = rhs(axpy(k2, dt / 2)), k4 = rhs(axpy(k3, dt));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  return c;
}

}  // namespace

TEST_CASE("classical concentrations") {
  const auto mono = MassMeasure::monodisperse();
  const auto c0 = concentrations(Model::Smoluchowski, mono, 0.0, 12);
  CHECK(c0[1] == 1.0);
  for (std::size_t m = 2; m <= 12; ++m) CHECK(c0[m] == 0.0);

  const auto c = concentrations(Model::Smoluchowski, mono, 0.5, 30);
  CHECK(c[1] == doctest::Approx(std::exp(-0.5)).epsilon(1e-13));
  CHECK(c[2] == doctest::Approx(0.5 * std::exp(-1.0) / 2).epsilon(1e-13));
  const auto brute = brute_smoluchowski(50, 0.5, 1e-4);
  for (int m = 1; m <= 30; ++m) CHECK(std::abs(c[static_cast<std::size_t>(m)] - brute[static_cast<std::size_t>(m)]) < 1e-8);
}

TEST_CASE("post-gel concentrations of monodisperse data") {
  const auto mono = MassMeasure::monodisperse();
  // Smoluchowski after gelation: c_t(m) = c_1(m) / t.
  const auto smol = concentrations(Model::Smoluchowski, mono, 2.5, 40);
  for (int m = 1; m <= 40; ++m) CHECK(smol[static_cast<std::size_t>(m)] == doctest::Approx(tree_law(m, 1.0) / 2.5).epsilon(1e-10));
  // Flory keeps the pre-gel law for all t.
  const auto flory = concentrations(Model::Flory, mono, 2.0, 40);
  for (int m = 1; m <= 40; ++m) CHECK(flory[static_cast<std::size_t>(m)] == doctest::Approx(tree_law(m, 2.0)).epsilon(1e-9));
}

TEST_CASE("concentrations are nonnegative") {
  for (Model model : {Model::Smoluchowski, Model::Flory}) {
    for (const auto& measure : {MassMeasure::monodisperse(), MassMeasure::discrete({{1.0, 0.5}, {2.0, 0.25}})}) {
      for (double t : {0.1, 0.9, 1.3, 4.0}) {
        for (double v : concentrations(model, measure, t, 64)) CHECK(v >= -1e-12);
      }
    }
  }
  CHECK_THROWS_AS(concentrations(Model::FloryArms, MassMeasure::monodisperse(), 1.0), ModelError);
}

TEST_CASE("characteristic series reverts to h") {
  const auto measure = MassMeasure::discrete({{1.0, 0.5}, {2.0, 0.25}});
  const auto phi = characteristic_series(Model::Flory, measure, 1.5, 24);
  const auto h = ps_revert(phi);
  const auto back = ps_compose(phi, h);
  CHECK(back[1] == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t n = 2; n <= 24; ++n) CHECK(std::abs(back[n]) < 1e-10);
  const auto sol = ClassicSolution(Model::Flory, measure);
  CHECK(phi.evaluate(0.1) == doctest::Approx(sol.phi(1.5, 0.1)).epsilon(1e-12));
}

TEST_CASE("arms concentrations") {
  const auto arms = ArmMeasure::monodisperse(kMu);
  const ArmsSolution flory(Model::FloryArms, arms, 10.0);
  for (double t : {0.5, 1.0, 4.0}) {
    const auto p = flory.scaling(t);
    const auto c = arms_concentrations(kMu, p.alpha, p.beta, 4, 6);
    CHECK(c(0, 2) == doctest::Approx(t / (32 * (1 + t))).epsilon(1e-13));
    CHECK(c(0, 1) == 0.5);
    CHECK(c.unit_row_caveat);
    for (double v : c.values) CHECK(v >= 0.0);
  }
  const auto p1 = flory.scaling(1.0);
  CHECK(arms_concentrations(kMu, p1.alpha, p1.beta, 0, 2)(0, 2) == doctest::Approx(1.0 / 64).epsilon(1e-14));

  // Long-time limits: c(0,2) -> 1/32, every row with a >= 1 -> 0.
  const ArmsSolution late(Model::FloryArms, arms, 1e7);
  const auto pl = late.scaling(1e7);
  const auto cl = arms_concentrations(kMu, pl.alpha, pl.beta, 3, 4);
  CHECK(cl(0, 2) == doctest::Approx(1.0 / 32).epsilon(1e-6));
  for (int m = 1; m <= 4; ++m)
    for (int a = 1; a <= 3; ++a) CHECK(cl(a, m) < 1e-6);

  const auto degenerate = arms_concentrations({{2, 0.5}}, 2.0, 0.5, 3, 5);
  CHECK(degenerate.degenerate);
  for (int m = 2; m <= 5; ++m)
    for (int a = 0; a <= 3; ++a) CHECK(degenerate(a, m) == 0.0);

  CHECK_THROWS_AS(arms_concentrations(kMu, 0.5, 0.1, 2, 2), DomainError);
}

TEST_CASE("factorial ratio switches to log-gamma without a jump") {
  CHECK(arms_factorial_ratio(0, 2) == 0.5);
  CHECK(arms_factorial_ratio(2, 3) == doctest::Approx(6.0 / (2 * 6)));
  const double exact = arms_factorial_ratio(10, 10);   // a + m = 20, integer path
  const double gamma = std::exp(std::lgamma(19.0) - std::lgamma(11.0) - std::lgamma(11.0));
  CHECK(exact == doctest::Approx(gamma).epsilon(1e-12));
  CHECK(arms_factorial_ratio(11, 10) == doctest::Approx(std::exp(std::lgamma(20.0) - std::lgamma(12.0) - std::lgamma(11.0))).epsilon(1e-12));
  CHECK_THROWS_AS(arms_factorial_ratio(1, 1), DomainError);
}

TEST_CASE("limiting concentrations") {
  const auto arms = ArmMeasure::monodisperse(kMu);
  const auto fl = limiting_concentrations(Model::FloryArms, arms, 6);
  CHECK(fl.p_or_c == doctest::Approx(1.0 / 3).epsilon(1e-10));
  CHECK(fl.M_inf == doctest::Approx(16.0 / 27).epsilon(1e-10));
  CHECK(fl.T_gel == doctest::Approx(2.0));
  CHECK(fl.c_inf[2] == doctest::Approx(1.0 / 32).epsilon(1e-14));
  CHECK(std::isnan(fl.c_inf[1]));

  const auto sm = limiting_concentrations(Model::SmoluchowskiArms, arms, 6);
  const double c = 1.0 / std::sqrt(3.0);
  CHECK(sm.p_or_c == doctest::Approx(c).epsilon(1e-10));
  CHECK(sm.beta_inf == doctest::Approx(2 * c).epsilon(1e-10));
  CHECK(sm.M_inf == doctest::Approx(0.5 + 0.25 * c + 0.25 * c * c * c).epsilon(1e-10));
  CHECK(sm.M_inf > fl.M_inf);

  const auto sub = ArmMeasure::monodisperse({{1, 1.0}});
  const auto sf = limiting_concentrations(Model::FloryArms, sub, 4);
  const auto ss = limiting_concentrations(Model::SmoluchowskiArms, sub, 4);
  CHECK(sf.p_or_c == 1.0);
  CHECK(ss.beta_inf == 1.0);
  CHECK(sf.M_inf == 1.0);
  CHECK(ss.M_inf == 1.0);

  const auto deg = limiting_concentrations(Model::FloryArms, ArmMeasure::monodisperse({{2, 0.5}}), 5);
  CHECK(deg.degenerate);
  for (int m = 2; m <= 5; ++m) CHECK(deg.c_inf[static_cast<std::size_t>(m)] == 0.0);

  CHECK_THROWS_AS(limiting_concentrations(Model::Flory, arms, 4), ModelError);
}
