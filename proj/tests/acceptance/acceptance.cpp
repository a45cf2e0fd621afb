// Acceptance suite: one PASS/FAIL line per criterion.
//
// Exit status is nonzero when a criterion fails unexpectedly or throws.
// Criteria listed in kDocumentedFailures still print FAIL; they are
// unattainable as stated and the reason is printed alongside.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gelsolve/models.hpp"
#include "gelsolve/oracle.hpp"
#include "gelsolve/power_series.hpp"
#include "gelsolve/series.hpp"

using namespace gelsolve;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [violated]");
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

const ArmLaw kMu{{0, 0.5}, {1, 0.25}, {3, 0.25}};

const std::map<int, std::string> kDocumentedFailures{
    {6, "the truncated system cannot hold the sol tail above M_max at the gel time: "
        "sum_{m>400} m c_1(m) ~ sqrt(2/(pi*400)) = 0.0399"},
};

double tree_law(int m, double t) {
  return std::exp((m - 2) * std::log(m) + (m - 1) * std::log(t) - m * t - std::lgamma(m + 1.0));
}

std::vector<double> steps(double from, double to, double h) {
  std::vector<double> out;
  const int n = static_cast<int>(std::lround((to - from) / h));
  for (int i = 0; i <= n; ++i) out.push_back(from + i * h);
  return out;
}

// --- criteria -------------------------------------------------------------------

void monodisperse_smoluchowski(Outcome& o) {
  const ClassicSolution sol(Model::Smoluchowski, MassMeasure::monodisperse());
  double err_mass = 0.0, err_second = 0.0;
  for (double t : steps(1.0, 10.0, 0.1)) err_mass = std::max(err_mass, std::abs(sol.mass(t) - 1.0 / t));
  for (double t : steps(0.1, 0.9, 0.1)) err_second = std::max(err_second, std::abs(sol.second_moment(t) - 1.0 / (1.0 - t)));
  o.require(err_mass <= 1e-10, "max|M_t - 1/t| = " + sci(err_mass));
  o.require(err_second <= 1e-8, "max|second moment - 1/(1-t)| = " + sci(err_second));
}

void exponential_smoluchowski(Outcome& o) {
  const ClassicSolution sol(Model::Smoluchowski, MassMeasure::exponential());
  double err = 0.0;
  for (double t : {1.0, 10.0, 100.0}) err = std::max(err, std::abs(sol.mass(t) * std::pow(2 * t, 2.0 / 3.0) - 1.0));
  o.require(err <= 1e-6, "max|M_t (2t)^(2/3) - 1| = " + sci(err));
}

void monodisperse_flory(Outcome& o) {
  double l = 0.0;
  for (int i = 0; i < 1000000; ++i) {
    const double next = std::exp(-2.0 * (1.0 - l));
    const bool done = std::abs(next - l) < 1e-12;
    l = next;
    if (done) break;
  }
  const double M = ClassicSolution(Model::Flory, MassMeasure::monodisperse()).mass(2.0);
  o.require(std::abs(M - 0.203188) <= 1e-5, "|M_2 - 0.203188| = " + sci(std::abs(M - 0.203188)));
  o.require(std::abs(M - l) <= 1e-10, "|M_2 - fixed point| = " + sci(std::abs(M - l)));
}

void flory_below_smoluchowski(Outcome& o) {
  for (const auto& [name, measure] : std::vector<std::pair<std::string, MassMeasure>>{
           {"delta_1", MassMeasure::monodisperse()},
           {"discrete", MassMeasure::discrete({{1.0, 0.5}, {2.0, 0.25}})}}) {
    const ClassicSolution smol(Model::Smoluchowski, measure), flory(Model::Flory, measure);
    const double tg = smol.gel_time();
    double min_gap = kInfinity;
    for (double t : steps(0.0, 5.0, 0.01)) {
      if (t <= tg) continue;
      min_gap = std::min(min_gap, smol.mass(t) - flory.mass(t));
    }
    const double margin = smol.mass(2 * tg) - flory.mass(2 * tg);
    o.require(min_gap > 0.0, name + ": min gap on (T_gel,5] = " + sci(min_gap));
    o.require(margin > 1e-8, name + ": gap at 2 T_gel = " + sci(margin));
  }
}

void oracle_pre_gel(Outcome& o) {
  const auto mono = MassMeasure::monodisperse();
  const ClassicSolution sol(Model::Smoluchowski, mono);
  const auto grid = steps(0.0, 0.9, 0.05);
  const auto nobig = integrate(Model::Smoluchowski, Flavor::NoBigCoagulation, oracle_initial(mono, 200), grid, 1e-3);
  double err_mass = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) err_mass = std::max(err_mass, std::abs(sol.mass(grid[i]) - nobig[i].sol_mass()));
  o.require(err_mass <= 1e-4, "mass error vs no-big-coagulation oracle = " + sci(err_mass));

  // Before gelation the gel-interacting Flory system is closed on m <= M_max.
  const std::vector<double> times{0.25, 0.5, 0.9};
  const auto exact = integrate(Model::Flory, Flavor::GelInteracting, oracle_initial(mono, 200), times, 1e-3);
  double err_c = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto c = concentrations(Model::Smoluchowski, mono, times[i], 30);
    for (int m = 1; m <= 30; ++m) err_c = std::max(err_c, std::abs(c[static_cast<std::size_t>(m)] - exact[i].conc(m)));
  }
  o.require(err_c <= 1e-6, "series c_t(m), m<=30 vs oracle = " + sci(err_c));
}

void oracle_post_gel_flory(Outcome& o) {
  const auto mono = MassMeasure::monodisperse();
  const ClassicSolution sol(Model::Flory, mono);
  const auto grid = steps(0.0, 3.0, 0.05);
  const auto states = integrate(Model::Flory, Flavor::GelInteracting, oracle_initial(mono, 400), grid, 1e-3);
  double err = 0.0, t_worst = 0.0, cons = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double e = std::abs(sol.mass(grid[i]) - states[i].sol_mass());
    if (e > err) {
      err = e;
      t_worst = grid[i];
    }
    cons = std::max(cons, std::abs(states[i].sol_mass() + states[i].gel_mass - 1.0));
  }
  std::ostringstream where;
  where << " at t = " << t_worst;
  o.require(err <= 1e-3, "max mass error = " + sci(err) + where.str());
  o.require(cons <= 1e-8, "sol + gel mass conservation = " + sci(cons));
}

void arms_limits(Outcome& o) {
  const auto arms = ArmMeasure::monodisperse(kMu);
  const auto fl = limiting_concentrations(Model::FloryArms, arms, 8);
  const auto sm = limiting_concentrations(Model::SmoluchowskiArms, arms, 8);
  const double c = 1.0 / std::sqrt(3.0);
  o.require(std::abs(fl.p_or_c - 1.0 / 3) <= 1e-10, "|p_nu - 1/3| = " + sci(std::abs(fl.p_or_c - 1.0 / 3)));
  o.require(std::abs(fl.M_inf - 16.0 / 27) <= 1e-10, "|M_inf(F) - 16/27| = " + sci(std::abs(fl.M_inf - 16.0 / 27)));
  o.require(std::abs(sm.p_or_c - c) <= 1e-10, "|c - 3^-1/2| = " + sci(std::abs(sm.p_or_c - c)));

  const AlphaBetaTrajectory traj(arms, 200.0);
  const double beta_inf = traj.beta_limit();
  o.require(std::abs(beta_inf - 2 * c) <= 1e-8,
            "|beta_inf - 2/sqrt(3)| = " + sci(std::abs(beta_inf - 2 * c)) + " (beta_200 = " + sci(traj.at(200.0).beta) +
                " plus tail integral)");
  o.require(std::abs(sm.M_inf - 0.692450) <= 1e-6, "|M_inf(S) - 0.692450| = " + sci(std::abs(sm.M_inf - 0.692450)));
  o.require(sm.M_inf > fl.M_inf, "M_inf(S) > M_inf(F)");
}

void arms_pre_gel(Outcome& o) {
  const auto arms = ArmMeasure::monodisperse(kMu);
  const ArmsSolution smol(Model::SmoluchowskiArms, arms, 2.0);
  const ArmsSolution flory(Model::FloryArms, arms, 2.0);
  double err_alpha = 0.0, err_A = 0.0;
  for (double t : steps(0.0, 1.99, 0.01)) {
    err_alpha = std::max(err_alpha, std::abs(smol.scaling(t).alpha - (1.0 + t)));
    err_A = std::max({err_A, std::abs(smol.arms_count(t) - 1.0 / (1.0 + t)),
                      std::abs(flory.arms_count(t) - 1.0 / (1.0 + t))});
  }
  o.require(err_alpha <= 1e-9, "max|alpha_t - (1+t)| = " + sci(err_alpha));
  o.require(err_A <= 1e-9, "max|A_t - 1/(1+t)| = " + sci(err_A));
}

void gel_derivative(Outcome& o) {
  const auto zero = mass_right_derivative_at_gel(gel_profile_log());
  const auto inf = mass_right_derivative_at_gel(gel_profile_sqrt_log());
  const auto half = mass_right_derivative_at_gel(gel_profile_sqrt_power(0.5));
  o.require(zero.verdict == LimitVerdict::Converged && std::abs(zero.value) <= 1e-4,
            "log profile -> " + sci(zero.value) + " (" + to_string(zero.verdict) + ")");
  o.require(inf.verdict == LimitVerdict::Diverged && inf.value == -kInfinity,
            "sqrt-log profile -> " + sci(inf.value) + " (" + to_string(inf.verdict) + ")");
  o.require(half.verdict == LimitVerdict::Converged && std::abs(half.value + 0.5) <= 1e-4,
            "power profile alpha=0.5 -> " + sci(half.value) + " (" + to_string(half.verdict) + ")");
}

void flory_arms_spot_value(Outcome& o) {
  const ArmsSolution sol(Model::FloryArms, ArmMeasure::monodisperse(kMu), 4.0);
  double err = 0.0;
  for (double t : {0.5, 1.0, 4.0}) {
    const auto p = sol.scaling(t);
    const auto c = arms_concentrations(kMu, p.alpha, p.beta, 0, 2);
    err = std::max(err, std::abs(c(0, 2) - t / (32 * (1 + t))));
  }
  o.require(err <= 1e-12, "max|c_t(0,2) - t/(32(1+t))| = " + sci(err));
}

void infinite_mass(Outcome& o) {
  const ClassicSolution sol(Model::Smoluchowski, MassMeasure::power_law(1.5));
  o.require(sol.gel_time() == 0.0, "T_gel = " + sci(sol.gel_time()));
  bool finite = true;
  for (double t : {0.01, 0.1, 1.0}) finite = finite && std::isfinite(sol.mass(t)) && sol.mass(t) > 0.0;
  o.require(finite, "M_t finite at t = 0.01, 0.1, 1");
  const auto study = mass_square_integrability(sol, 0.1, 1e-4);
  std::ostringstream s;
  s << "refinement difference " << sci(study.last_difference) << " at delta = " << sci(study.delta.back())
    << ", integral " << study.integral.back();
  o.require(study.converged && study.last_difference < 1e-4, s.str());
}

void property_suites(Outcome& o) {
  std::mt19937 rng(42);
  const SolverConfig cfg;

  // Characteristic round trip for every model.
  double worst = 0.0;
  const std::vector<double> xs{0.0, 0.25, 0.5, 0.75, 1.0};
  for (const auto& measure : {MassMeasure::monodisperse(), MassMeasure::exponential(), MassMeasure::power_law(1.5),
                              MassMeasure::discrete({{1.0, 0.5}, {2.0, 0.25}})}) {
    for (Model model : {Model::Smoluchowski, Model::Flory}) {
      if (model == Model::Flory && std::isinf(measure.moments().M0)) continue;
      const ClassicSolution sol(model, measure, cfg);
      for (double t : steps(0.05, 5.0, 0.35))
        for (double x : xs) worst = std::max(worst, std::abs(sol.phi(t, sol.h(t, x)) - x));
    }
  }
  const auto arms = ArmMeasure::monodisperse(kMu);
  for (Model model : {Model::SmoluchowskiArms, Model::FloryArms}) {
    const ArmsSolution sol(model, arms, 6.0, cfg);
    for (double t : steps(0.0, 6.0, 0.4))
      for (double x : xs) worst = std::max(worst, std::abs(sol.phi(t, sol.h(t, x, 1.0), 1.0) - x));
  }
  o.require(worst <= 10 * cfg.root_tol, "characteristic round trip " + sci(worst));

  // Series reversion round trip. With a small leading coefficient the inverse
  // coefficients grow geometrically, so that family is measured relative to them.
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  double rev_abs = 0.0, rev_rel = 0.0;
  for (double lead : {1.0, 0.5}) {
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> c(21, 0.0);
      c[1] = lead + std::abs(coef(rng));
      for (std::size_t i = 2; i < c.size(); ++i) c[i] = coef(rng) / static_cast<double>(i * i);
      const PowerSeries phi(c);
      const auto inv = ps_revert(phi);
      const auto back = ps_compose(phi, inv);
      double err = 0.0, scale = 1.0;
      for (std::size_t n = 1; n < c.size(); ++n) {
        err = std::max(err, std::abs(back[n] - (n == 1 ? 1.0 : 0.0)));
        scale = std::max(scale, std::abs(inv[n]));
      }
      if (lead == 1.0) rev_abs = std::max(rev_abs, err);
      rev_rel = std::max(rev_rel, err / scale);
    }
  }
  o.require(rev_abs <= 1e-10, "series reversion round trip " + sci(rev_abs));
  o.require(rev_rel <= 1e-10, "relative to inverse coefficients " + sci(rev_rel));

  // Fourth-order convergence of the oracle against the exact pre-gel law.
  const auto init = oracle_initial(MassMeasure::monodisperse(), 30);
  auto error = [&](double dt) {
    const auto s = integrate(Model::Flory, Flavor::GelInteracting, init, std::vector<double>{0.6}, dt);
    double e = 0.0;
    for (int m = 1; m <= 30; ++m) e = std::max(e, std::abs(s[0].conc(m) - tree_law(m, 0.6)));
    return e;
  };
  const double ratio = error(0.05) / error(0.025);
  std::ostringstream r;
  r << "oracle dt-halving error ratio " << ratio;
  o.require(ratio >= 12.0 && ratio <= 20.0, r.str());

  // Nonnegativity of every emitted concentration.
  double most_negative = 0.0;
  for (Model model : {Model::Smoluchowski, Model::Flory})
    for (const auto& measure : {MassMeasure::monodisperse(), MassMeasure::discrete({{1.0, 0.5}, {2.0, 0.25}})})
      for (double t : steps(0.0, 5.0, 0.25))
        for (double v : concentrations(model, measure, t, 64)) most_negative = std::min(most_negative, v);
  for (Model model : {Model::SmoluchowskiArms, Model::FloryArms}) {
    const ArmsSolution sol(model, arms, 6.0, cfg);
    for (double t : steps(0.0, 6.0, 0.5)) {
      const auto p = sol.scaling(t);
      for (double v : arms_concentrations(kMu, p.alpha, p.beta, 8, 12).values) most_negative = std::min(most_negative, v);
    }
    for (double v : limiting_concentrations(model, arms, 12).c_inf)
      if (!std::isnan(v)) most_negative = std::min(most_negative, v);
  }
  o.require(most_negative >= -1e-12, "most negative concentration " + sci(most_negative));
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"monodisperse Smoluchowski mass and second moment", monodisperse_smoluchowski},
      {"exponential-density Smoluchowski mass decay", exponential_smoluchowski},
      {"monodisperse Flory mass at t = 2", monodisperse_flory},
      {"Flory mass strictly below Smoluchowski after gelation", flory_below_smoluchowski},
      {"oracle agreement before gelation", oracle_pre_gel},
      {"oracle agreement after gelation (Flory, gel-interacting)", oracle_post_gel_flory},
      {"arms long-time limits", arms_limits},
      {"arms pre-gel exactness", arms_pre_gel},
      {"mass derivative at the gel time", gel_derivative},
      {"Flory-arms concentration spot value", flory_arms_spot_value},
      {"infinite initial mass", infinite_mass},
      {"property suites", property_suites},
  };

  int unexpected = 0, passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << (o.detail.tellp() > 0 ? "; " : "") << "exception: " << e.what();
      ++unexpected;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %2d  %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                o.detail.str().c_str(), secs);
    if (o.pass) {
      ++passed;
    } else if (const auto known = kDocumentedFailures.find(id); known != kDocumentedFailures.end()) {
      std::printf("          documented: %s\n", known->second.c_str());
    } else {
      ++unexpected;
    }
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed, %d unexpected failure(s)\n", passed, criteria.size(), unexpected);
  return unexpected == 0 ? 0 : 1;
}
