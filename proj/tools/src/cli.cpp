#include "gelsolve_cli/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gelsolve/errors.hpp"
#include "gelsolve/models.hpp"
#include "gelsolve/oracle.hpp"
#include "gelsolve/output.hpp"
#include "gelsolve/parallel.hpp"
#include "gelsolve/series.hpp"

namespace gelsolve::cli {

namespace {

Emission trajectory(const RunConfig& cfg) {
  const auto times = cfg.time_grid.points();
  std::vector<SolutionState> states(times.size());
  std::vector<double> second(times.size());
  double t_gel = kInfinity;

  if (is_arms(cfg.model)) {
    const ArmsSolution sol(cfg.model, cfg.initial.arm_measure(), cfg.time_grid.end, cfg.solver);
    t_gel = sol.gel_time();
    parallel_for(times.size(), [&](std::size_t i) {
      states[i] = sol.state(times[i]);
      second[i] = sol.second_moment(times[i]);
    });
  } else {
    const ClassicSolution sol(cfg.model, cfg.initial.mass_measure(), cfg.solver);
    t_gel = sol.gel_time();
    parallel_for(times.size(), [&](std::size_t i) {
      states[i] = sol.state(times[i]);
      second[i] = sol.second_moment(times[i]);
    });
  }

  std::ostringstream csv;
  CsvWriter w(csv);
  w.header({"t", "M", "A", "ell", "alpha", "beta", "second_moment"});
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto& s = states[i];
    w.row({s.t, s.M, s.A, s.ell, s.alpha, s.beta, second[i]});
  }
  JsonSummary js;
  js.add("model", std::string(to_string(cfg.model)))
      .add("initial", to_string(cfg.initial))
      .add("T_gel", t_gel)
      .add("rows", static_cast<double>(times.size()))
      .add("M_end", states.back().M)
      .add("A_end", states.back().A);
  return {csv.str(), js.str(), kSuccess};
}

void add_limits(JsonSummary& js, const LimitingConcentrations& lim) {
  js.add("beta_inf", lim.beta_inf)
      .add("p_nu_or_c", lim.p_or_c)
      .add(lim.model == Model::FloryArms ? "p_nu" : "c", lim.p_or_c)
      .add("M_inf", lim.M_inf)
      .add("T_gel", lim.T_gel)
      .add("degenerate", lim.degenerate);
}

Emission concentrations_table(const RunConfig& cfg) {
  const auto& cc = cfg.concentrations;
  std::ostringstream csv;
  CsvWriter w(csv);
  JsonSummary js;
  js.add("model", std::string(to_string(cfg.model))).add("initial", to_string(cfg.initial)).add("t", cc.t);

  if (is_arms(cfg.model)) {
    const ArmMeasure measure = cfg.initial.arm_measure();
    const ArmsSolution sol(cfg.model, measure, std::max(cc.t, 1e-12), cfg.solver);
    const auto p = sol.scaling(cc.t);
    const auto table = arms_concentrations(measure.arm_law(), p.alpha, p.beta, cc.a_max, cc.m_max);
    w.header({"a", "m", "c"});
    for (int m = 1; m <= cc.m_max; ++m) {
      for (int a = 0; a <= cc.a_max; ++a) w.row({static_cast<double>(a), static_cast<double>(m), table(a, m)});
    }
    js.add("alpha", p.alpha).add("beta", p.beta).add("A", sol.arms_count(cc.t));
    js.add("unit_row_caveat", table.unit_row_caveat);
    add_limits(js, limiting_concentrations(cfg.model, measure, std::max(cc.m_max, 2), cfg.solver));
  } else {
    const MassMeasure measure = cfg.initial.mass_measure();
    const auto c = concentrations(cfg.model, measure, cc.t, static_cast<std::size_t>(cc.m_max), cfg.solver);
    w.header({"m", "c"});
    for (int m = 1; m <= cc.m_max; ++m) w.row({static_cast<double>(m), c[static_cast<std::size_t>(m)]});
    const ClassicSolution sol(cfg.model, measure, cfg.solver);
    js.add("M", sol.mass(cc.t)).add("T_gel", sol.gel_time());
  }
  return {csv.str(), js.str(), kSuccess};
}

Emission limits(const RunConfig& cfg) {
  if (!is_arms(cfg.model)) throw ConfigError("limits are defined for the arms models only");
  const ArmMeasure measure = cfg.initial.arm_measure();
  const int m_max = std::max(cfg.concentrations.m_max, 2);
  const auto lim = limiting_concentrations(cfg.model, measure, m_max, cfg.solver);

  std::ostringstream csv;
  CsvWriter w(csv);
  w.header({"m", "c"});
  for (int m = 2; m <= m_max; ++m) w.row({static_cast<double>(m), lim.c_inf[static_cast<std::size_t>(m)]});

  JsonSummary js;
  js.add("model", std::string(to_string(cfg.model))).add("initial", to_string(cfg.initial));
  add_limits(js, lim);
  const ArmLaw mu = measure.arm_law();
  const auto zero = mu.find(0);
  js.add("c_inf_0_1", zero == mu.end() ? 0.0 : zero->second).add("c_inf_0_1_physical", false);
  // Long-time value of the integrated beta for comparison with the closed form.
  if (cfg.model == Model::SmoluchowskiArms && std::isfinite(lim.T_gel)) {
    const AlphaBetaTrajectory traj(measure, cfg.time_grid.end, cfg.solver);
    js.add("beta_inf_ode", traj.beta_limit()).add("ode_horizon", cfg.time_grid.end);
  }
  return {csv.str(), js.str(), kSuccess};
}

Emission validate(const RunConfig& cfg) {
  const auto times = cfg.time_grid.points();
  const auto& o = cfg.oracle;
  QuantityTrajectory analytic;
  analytic.t = times;
  analytic.values.resize(times.size());
  std::vector<OracleState> states;

  if (is_arms(cfg.model)) {
    const ArmMeasure measure = cfg.initial.arm_measure();
    const ArmsSolution sol(cfg.model, measure, cfg.time_grid.end, cfg.solver);
    parallel_for(times.size(), [&](std::size_t i) { analytic.values[i] = {sol.arms_count(times[i])}; });
    states = integrate(cfg.model, o.flavor, oracle_initial(measure, o.a_max, o.m_max), times, o.dt);
  } else {
    const MassMeasure measure = cfg.initial.mass_measure();
    if (!measure.on_integer_lattice())
      throw ConfigError("the oracle needs initial data on the integer mass lattice");
    const ClassicSolution sol(cfg.model, measure, cfg.solver);
    parallel_for(times.size(), [&](std::size_t i) { analytic.values[i] = {sol.mass(times[i])}; });
    states = integrate(cfg.model, o.flavor, oracle_initial(measure, o.m_max), times, o.dt);
  }
  const auto oracle = extract(states, is_arms(cfg.model) ? Quantity::Arms : Quantity::Mass);
  const auto report = compare(analytic, oracle, o.tol);

  std::ostringstream csv;
  CsvWriter w(csv);
  w.header({"t", "analytic", "oracle", "abs_err", "rel_err", "gel_mass"});
  for (std::size_t i = 0; i < times.size(); ++i) {
    w.row({times[i], analytic.values[i][0], oracle.values[i][0], report.rows[i].max_abs, report.rows[i].max_rel,
           states[i].gel_mass});
  }
  JsonSummary js;
  js.add("model", std::string(to_string(cfg.model)))
      .add("flavor", std::string(to_string(o.flavor)))
      .add("quantity", std::string(is_arms(cfg.model) ? "arms" : "mass"))
      .add("max_abs", report.max_abs)
      .add("max_rel", report.max_rel)
      .add("tolerance", report.tolerance)
      .add("pass", report.pass);
  return {csv.str(), js.str(), report.pass ? kSuccess : kValidationFailure};
}

// --- command line -----------------------------------------------------------------

void parse_grid(const std::string& text, TimeGrid& grid) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  try {
    if (parts.size() == 1) {
      grid.count = std::stoi(parts[0]);
      return;
    }
    if (parts.size() == 3 || parts.size() == 4) {
      grid.start = std::stod(parts[0]);
      grid.end = std::stod(parts[1]);
      grid.count = std::stoi(parts[2]);
      if (parts.size() == 4) {
        if (parts[3] == "linear") grid.spacing = Spacing::Linear;
        else if (parts[3] == "geometric") grid.spacing = Spacing::Geometric;
        else throw ConfigError("unknown grid spacing '" + parts[3] + "'");
      }
      return;
    }
  } catch (const std::invalid_argument&) {
  } catch (const std::out_of_range&) {
  }
  throw ConfigError("--grid expects COUNT or START:END:COUNT[:linear|geometric], got '" + text + "'");
}

void write_text(const std::string& target, const std::string& text, std::ostream& out) {
  if (target == "-") {
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
    return;
  }
  std::ofstream file(target, std::ios::binary);
  if (!file) throw ConfigError("cannot write '" + target + "'");
  file << text;
  if (!text.empty() && text.back() != '\n') file << '\n';
}

struct Flags {
  std::string config, model, initial, flavor, grid, spacing;
  double t_start = 0, t_end = 0, root_tol = 0, ode_dt = 0, dt = 0, tol = 0, t = 0;
  int max_iter = 0, mmax = 0, amax = 0, max_mass = 0, max_arms = 0;
  bool ode_adaptive = false, dump_config = false;
  std::string csv = "-", json, out_dir = ".";
};

RunConfig resolve(const CLI::App& app, const Flags& f) {
  RunConfig cfg = f.config.empty() ? RunConfig{} : RunConfig::from_file(f.config);
  auto given = [&](const char* name) { return app.get_option(name)->count() > 0; };
  if (given("--model")) cfg.model = parse_model(f.model);
  if (given("--initial")) cfg.initial = parse_measure_spec(f.initial);
  if (given("--grid")) parse_grid(f.grid, cfg.time_grid);
  if (given("--t-start")) cfg.time_grid.start = f.t_start;
  if (given("--t-end")) cfg.time_grid.end = f.t_end;
  if (given("--spacing")) {
    if (f.spacing == "linear") cfg.time_grid.spacing = Spacing::Linear;
    else if (f.spacing == "geometric") cfg.time_grid.spacing = Spacing::Geometric;
    else throw ConfigError("unknown grid spacing '" + f.spacing + "'");
  }
  if (given("--root-tol")) cfg.solver.root_tol = f.root_tol;
  if (given("--max-iter")) cfg.solver.max_iter = f.max_iter;
  if (given("--ode-dt")) cfg.solver.ode_dt = f.ode_dt;
  if (given("--ode-adaptive")) cfg.solver.ode_adaptive = f.ode_adaptive;
  if (given("--flavor")) cfg.oracle.flavor = parse_flavor(f.flavor);
  if (given("--mmax")) cfg.oracle.m_max = f.mmax;
  if (given("--amax")) cfg.oracle.a_max = f.amax;
  if (given("--dt")) cfg.oracle.dt = f.dt;
  if (given("--tol")) cfg.oracle.tol = f.tol;
  if (given("--t")) cfg.concentrations.t = f.t;
  if (given("--max-mass")) cfg.concentrations.m_max = f.max_mass;
  if (given("--max-arms")) cfg.concentrations.a_max = f.max_arms;
  return cfg;
}

}  // namespace

Emission emit_moments(const RunConfig& cfg) {
  JsonSummary js;
  js.add("model", std::string(to_string(cfg.model))).add("initial", to_string(cfg.initial));
  if (cfg.initial.is_arms()) {
    const ArmMeasure m = cfg.initial.arm_measure();
    js.add("total", m.total()).add("A0", m.A0()).add("K", m.K());
    js.add("T_gel", is_arms(cfg.model) ? gel_time(cfg.model, m) : kUndefined);
  } else {
    const MassMeasure m = cfg.initial.mass_measure();
    const Moments mo = m.moments();
    js.add("M0", mo.M0).add("K", mo.K).add("m0", mo.m0).add("bottom_atom_weight", m.bottom_atom_weight());
    js.add("T_gel", is_arms(cfg.model) ? kUndefined : gel_time(cfg.model, m));
  }
  return {"", js.str(), kSuccess};
}

Emission emit(const RunConfig& cfg, Output output) {
  switch (output) {
    case Output::Trajectory: return trajectory(cfg);
    case Output::Concentrations: return concentrations_table(cfg);
    case Output::Limits: return limits(cfg);
    case Output::Validate: return validate(cfg);
  }
  throw UsageError("unknown output");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"gelsolve: global solutions of multiplicative coagulation models"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;

  app.add_option("--config", f.config, "JSON configuration file; flags override its values");
  app.add_option("--model", f.model, "smoluchowski | flory | smoluchowski-arms | flory-arms");
  app.add_option("--initial,--measure", f.initial,
                 "monodisperse | exponential | power-law:P | discrete:M=W,... | arms:A=W,... | arm-atoms:A:M=W,...");
  app.add_option("--grid", f.grid, "COUNT or START:END:COUNT[:linear|geometric]");
  app.add_option("--t-start", f.t_start, "first grid time");
  app.add_option("--t-end", f.t_end, "last grid time (also the alpha/beta integration horizon)");
  app.add_option("--spacing", f.spacing, "linear | geometric");
  app.add_option("--root-tol", f.root_tol, "root-finding tolerance");
  app.add_option("--max-iter", f.max_iter, "root-finding iteration cap");
  app.add_option("--ode-dt", f.ode_dt, "alpha/beta RK4 step");
  app.add_flag("--ode-adaptive", f.ode_adaptive, "adaptive alpha/beta integration");
  app.add_option("--flavor", f.flavor, "oracle flavour: no-big-coagulation | gel-interacting");
  app.add_option("--mmax", f.mmax, "oracle mass cutoff");
  app.add_option("--amax", f.amax, "oracle arm cutoff");
  app.add_option("--dt", f.dt, "oracle RK4 step");
  app.add_option("--tol", f.tol, "validation tolerance on the absolute error");
  app.add_option("--t", f.t, "time of the concentration table");
  app.add_option("--max-mass", f.max_mass, "largest mass in concentration/limit tables");
  app.add_option("--max-arms", f.max_arms, "largest arm count in arms concentration tables");
  app.add_option("--csv", f.csv, "CSV destination ('-' for stdout)");
  app.add_option("--json", f.json, "JSON summary destination ('-' for stdout)");
  app.add_flag("--dump-config", f.dump_config, "print the resolved configuration and exit");

  auto* moments = app.add_subcommand("moments", "moments and gel time of the initial data");
  app.add_subcommand("trajectory", "t, M, A, ell, alpha, beta, second_moment on the time grid");
  app.add_subcommand("concentrations", "concentration table at --t");
  app.add_subcommand("limits", "long-time limits of the arms models");
  app.add_subcommand("validate", "analytic solution against the truncated ODE oracle");
  auto* run = app.add_subcommand("run", "every output listed in the configuration, written to --out-dir");
  run->add_option("--out-dir", f.out_dir, "directory for <output>.csv and <output>.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  try {
    const RunConfig cfg = resolve(app, f);
    cfg.validate();
    if (f.dump_config) {
      out << cfg.to_json();
      return kSuccess;
    }
    const auto* sub = app.get_subcommands().front();
    if (sub == moments) {
      write_text(f.json.empty() ? "-" : f.json, emit_moments(cfg).json, out);
      return kSuccess;
    }
    if (sub == run) {
      std::filesystem::create_directories(f.out_dir);
      int status = kSuccess;
      for (Output o : cfg.outputs) {
        const auto e = emit(cfg, o);
        const auto base = (std::filesystem::path(f.out_dir) / std::string(to_string(o))).string();
        write_text(base + ".csv", e.csv, out);
        write_text(base + ".json", e.json, out);
        status = std::max(status, e.status);
      }
      return status;
    }
    const auto e = emit(cfg, parse_output(sub->get_name()));
    write_text(f.csv, e.csv, out);
    if (!f.json.empty()) write_text(f.json, e.json, out);
    return e.status;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kSolverError;
  } catch (const Error& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kSolverError;
  }
}

}  // namespace gelsolve::cli
