#include <cmath>

#include "doctest.h"
#include "gelsolve/errors.hpp"
#include "gelsolve/models.hpp"

using namespace gelsolve;

namespace {

const ArmLaw kMu{{0, 0.5}, {1, 0.25}, {3, 0.25}};

double flory_fixed_point(double t) {
  double l = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double next = std::exp(-t * (1.0 - l));
    if (std::abs(next - l) < 1e-15) return next;
    l = next;
  }
  return l;
}

SolverConfig coarse_ode() {
  SolverConfig cfg;
  cfg.ode_dt = 1e-3;
  return cfg;
}

}  // namespace

TEST_CASE("sol mass of the classical models") {
  const ClassicSolution smol(Model::Smoluchowski, MassMeasure::monodisperse());
  CHECK(smol.mass(2.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(smol.mass(0.7) == 1.0);
  const ClassicSolution expo(Model::Smoluchowski, MassMeasure::exponential());
  CHECK(expo.mass(4.0) == doctest::Approx(0.25).epsilon(1e-12));
  const ClassicSolution flory(Model::Flory, MassMeasure::monodisperse());
  CHECK(flory.mass(2.0) == doctest::Approx(flory_fixed_point(2.0)).epsilon(1e-10));
  CHECK_THROWS_AS(ClassicSolution(Model::Flory, MassMeasure::power_law(1.5)), ModelError);
  CHECK_THROWS_AS(ClassicSolution(Model::FloryArms, MassMeasure::monodisperse()), ModelError);
  CHECK_THROWS_AS(smol.mass(-0.1), DomainError);
}

TEST_CASE("generating function of the solution") {
  const ClassicSolution smol(Model::Smoluchowski, MassMeasure::exponential());
  for (double x : {0.0, 0.3, 0.8}) CHECK(smol.gen_fun(0.0, x) == doctest::Approx(smol.measure().g0(x)));
  const ClassicSolution mono(Model::Smoluchowski, MassMeasure::monodisperse());
  CHECK(mono.gen_fun(2.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mono.h(2.0, 1.0) == doctest::Approx(0.5).epsilon(1e-10));
  const ClassicSolution flory(Model::Flory, MassMeasure::monodisperse());
  CHECK(flory.h(2.0, 1.0) == doctest::Approx(flory_fixed_point(2.0)).epsilon(1e-10));
  CHECK_THROWS_AS(mono.gen_fun(1.0, 1.5), DomainError);
}

TEST_CASE("characteristic conservation g_t(phi_t(x)) = g0(x)") {
  for (Model model : {Model::Smoluchowski, Model::Flory}) {
    for (const auto& measure : {MassMeasure::monodisperse(), MassMeasure::exponential(),
                                MassMeasure::discrete({{1.0, 0.5}, {2.0, 0.25}})}) {
      const ClassicSolution sol(model, measure);
      for (double t : {0.3, 1.7, 4.0}) {
        const double crest = sol.characteristic(t).crest();
        for (int i = 0; i <= 10; ++i) {
          const double x = crest * i / 10.0;
          CHECK(std::abs(sol.gen_fun(t, sol.phi(t, x)) - measure.g0(x)) <= 1e-8);
        }
      }
    }
  }
}

TEST_CASE("second moment") {
  const ClassicSolution mono(Model::Smoluchowski, MassMeasure::monodisperse());
  CHECK(mono.second_moment(0.5) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::isinf(mono.second_moment(1.0)));
  CHECK(std::isinf(mono.second_moment(1.5)));
  // K / (1 - t K) before gelation: K = 2 for the exponential density.
  const ClassicSolution expo(Model::Smoluchowski, MassMeasure::exponential());
  CHECK(expo.second_moment(0.25) == doctest::Approx(4.0).epsilon(1e-12));

  const ClassicSolution flory(Model::Flory, MassMeasure::monodisperse());
  const double l = flory_fixed_point(2.0);
  CHECK(flory.second_moment(2.0) == doctest::Approx(l / (1.0 - 2.0 * l)).epsilon(1e-9));
  CHECK(std::abs(flory.second_moment(2.0) - 0.342286) < 5e-6);
  CHECK(std::isinf(flory.second_moment(1.0)));
}

TEST_CASE("Flory mass never exceeds Smoluchowski mass") {
  for (const auto& measure : {MassMeasure::monodisperse(), MassMeasure::discrete({{1.0, 0.5}, {2.0, 0.25}})}) {
    const ClassicSolution smol(Model::Smoluchowski, measure), flory(Model::Flory, measure);
    const double tg = smol.gel_time();
    for (double t = 0.05; t <= tg; t += 0.05) CHECK(std::abs(flory.mass(t) - smol.mass(t)) <= 1e-10);
    for (double t = tg + 0.05; t <= 5.0; t += 0.05) CHECK(flory.mass(t) < smol.mass(t));
    // Strictly decreasing after gelation, continuous at the gel time.
    double prev = smol.mass(tg);
    for (double t = tg + 0.05; t <= 5.0; t += 0.05) {
      CHECK(smol.mass(t) < prev);
      prev = smol.mass(t);
    }
    const double M0 = measure.moments().M0;
    double gap = 1.0;
    for (double d : {1e-2, 1e-4, 1e-6}) {
      const double g = std::abs(flory.mass(tg + d) - M0);
      CHECK(g < gap);
      gap = g;
    }
    CHECK(gap < 1e-4);
  }
}

TEST_CASE("arms models before gelation") {
  const auto arms = ArmMeasure::monodisperse(kMu);
  const ArmsSolution smol(Model::SmoluchowskiArms, arms, 6.0, coarse_ode());
  const ArmsSolution flory(Model::FloryArms, arms, 6.0);
  CHECK(smol.arms_count(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  for (double t : {0.25, 1.0, 1.9}) {
    CHECK(smol.arms_count(t) == doctest::Approx(1.0 / (1.0 + t)).epsilon(1e-12));
    CHECK(flory.arms_count(t) == doctest::Approx(1.0 / (1.0 + t)).epsilon(1e-12));
    CHECK(smol.gen_fun(t, 1.0, 1.0) == doctest::Approx(smol.arms_count(t)).epsilon(1e-12));
  }
  for (double x : {0.0, 0.4, 1.0}) CHECK(smol.gen_fun(0.0, x, 0.7) == doctest::Approx(arms.k0(x, 0.7)));
  CHECK(std::isinf(smol.second_moment(2.0)));
}

TEST_CASE("arms models after gelation") {
  const auto arms = ArmMeasure::monodisperse(kMu);
  const ArmsSolution flory(Model::FloryArms, arms, 10.0);
  // l_4 = 2/3 solves phi_4(l, 1) = 1; A_4 = k0(2/3) / 5.
  CHECK(flory.ell(4.0) == doctest::Approx(2.0 / 3).epsilon(1e-10));
  CHECK(flory.arms_count(4.0) == doctest::Approx((0.25 + 0.75 * 4.0 / 9.0) / 5.0).epsilon(1e-10));

  const ArmsSolution smol(Model::SmoluchowskiArms, arms, 10.0, coarse_ode());
  CHECK(smol.gen_fun(5.0, 1.0, 1.0) == doctest::Approx(smol.arms_count(5.0)).epsilon(1e-10));
  CHECK(std::isinf(smol.second_moment(3.0)));
  CHECK(std::isfinite(flory.second_moment(3.0)));

  double prev_s = 2.0, prev_f = 2.0;
  for (double t = 0.0; t <= 10.0; t += 0.25) {
    CHECK(smol.arms_count(t) < prev_s);
    CHECK(flory.arms_count(t) < prev_f);
    CHECK(smol.arms_count(t) <= 1.0 / (1.0 + t) + 1e-12);
    CHECK(flory.arms_count(t) <= 1.0 / (1.0 + t) + 1e-12);
    prev_s = smol.arms_count(t);
    prev_f = flory.arms_count(t);
  }
  CHECK_THROWS_AS(smol.arms_count(11.0), DomainError);
  CHECK_THROWS_AS(ArmsSolution(Model::Flory, arms, 1.0), ModelError);
}

TEST_CASE("right derivative of the mass at the gel time") {
  const auto zero = mass_right_derivative_at_gel(gel_profile_log());
  CHECK(zero.verdict == LimitVerdict::Converged);
  CHECK(std::abs(zero.value) < 1e-4);

  const auto minus_inf = mass_right_derivative_at_gel(gel_profile_sqrt_log());
  CHECK(minus_inf.verdict == LimitVerdict::Diverged);
  CHECK(minus_inf.value == -kInfinity);

  const auto half = mass_right_derivative_at_gel(gel_profile_sqrt_power(0.5));
  CHECK(half.verdict == LimitVerdict::Converged);
  CHECK(half.value == doctest::Approx(-0.5).epsilon(1e-4));

  // g0 = x: the limit is -1.
  CHECK(mass_right_derivative_at_gel(MassMeasure::monodisperse()).value == doctest::Approx(-1.0).epsilon(1e-9));
  // Exponential density: g0'(1) = E[m^2] = 2, g0''(1) = E[m^3] - E[m^2] = 4, limit -8 / 6.
  CHECK(mass_right_derivative_at_gel(MassMeasure::exponential()).value == doctest::Approx(-4.0 / 3).epsilon(1e-6));
  CHECK_THROWS_AS(mass_right_derivative_at_gel(MassMeasure::power_law(1.5)), DomainError);
}

TEST_CASE("long-time asymptotics") {
  const auto smol = asymptotics_report(ClassicSolution(Model::Smoluchowski, MassMeasure::monodisperse()));
  CHECK(smol.constant == 1.0);
  CHECK(smol.consistent);

  const auto flory = asymptotics_report(ClassicSolution(Model::Flory, MassMeasure::monodisperse()));
  CHECK(flory.constant == 1.0);
  CHECK(flory.consistent);

  const auto expo = asymptotics_report(ClassicSolution(Model::Flory, MassMeasure::exponential()));
  CHECK(std::isnan(expo.constant));
  CHECK_FALSE(expo.consistent);
  CHECK(expo.fitted_exponent == doctest::Approx(-2.0).epsilon(0.05));
}

TEST_CASE("infinite initial mass") {
  const ClassicSolution sol(Model::Smoluchowski, MassMeasure::power_law(1.5));
  CHECK(sol.gel_time() == 0.0);
  for (double t : {0.01, 0.1, 1.0}) CHECK(std::isfinite(sol.mass(t)));
  const auto study = mass_square_integrability(sol);
  CHECK(study.converged);
  CHECK(study.last_difference < 1e-4);
}
