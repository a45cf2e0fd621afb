#include "gelsolve/run_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "gelsolve/errors.hpp"
#include "gelsolve/output.hpp"
#include "json.hpp"

namespace gelsolve {

using nlohmann::json;

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (true) {
    const auto pos = text.find(sep, begin);
    parts.emplace_back(text.substr(begin, pos == std::string_view::npos ? pos : pos - begin));
    if (pos == std::string_view::npos) break;
    begin = pos + 1;
  }
  return parts;
}

double to_double(const std::string& s, std::string_view what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("invalid number '" + s + "' in " + std::string(what));
}

int to_int(const std::string& s, std::string_view what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("invalid integer '" + s + "' in " + std::string(what));
}

std::string_view kind_name(MeasureSpec::Kind kind) {
  switch (kind) {
    case MeasureSpec::Kind::Monodisperse: return "monodisperse";
    case MeasureSpec::Kind::Exponential: return "exponential";
    case MeasureSpec::Kind::PowerLaw: return "power-law";
    case MeasureSpec::Kind::Discrete: return "discrete";
    case MeasureSpec::Kind::Arms: return "arms";
  }
  return "?";
}

MeasureSpec::Kind parse_kind(std::string_view name) {
  for (auto k : {MeasureSpec::Kind::Monodisperse, MeasureSpec::Kind::Exponential, MeasureSpec::Kind::PowerLaw,
                 MeasureSpec::Kind::Discrete, MeasureSpec::Kind::Arms}) {
    if (kind_name(k) == name) return k;
  }
  throw ConfigError("unknown measure kind '" + std::string(name) + "'");
}

bool unit_mass(const std::vector<ArmAtom>& atoms) {
  for (const auto& a : atoms) {
    if (a.mass != 1) return false;
  }
  return true;
}

std::string_view spacing_name(Spacing s) { return s == Spacing::Linear ? "linear" : "geometric"; }

Spacing parse_spacing(std::string_view s) {
  if (s == "linear") return Spacing::Linear;
  if (s == "geometric") return Spacing::Geometric;
  throw ConfigError("unknown grid spacing '" + std::string(s) + "' (expected linear or geometric)");
}

json measure_to_json(const MeasureSpec& m) {
  json j = json::object();
  j["kind"] = kind_name(m.kind);
  if (m.kind == MeasureSpec::Kind::PowerLaw) j["p"] = m.p;
  if (m.kind == MeasureSpec::Kind::Discrete) {
    j["atoms"] = json::array();
    for (const auto& a : m.atoms) j["atoms"].push_back({a.mass, a.weight});
  }
  if (m.kind == MeasureSpec::Kind::Arms) {
    j["atoms"] = json::array();
    for (const auto& a : m.arm_atoms) j["atoms"].push_back({a.arms, a.mass, a.weight});
  }
  return j;
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> keys, std::string_view where) {
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (auto k : keys) known = known || key == k;
    if (!known) throw ConfigError("unknown key '" + key + "' in " + std::string(where));
  }
}

MeasureSpec measure_from_json(const json& j) {
  if (j.is_string()) return parse_measure_spec(j.get<std::string>());
  if (!j.is_object()) throw ConfigError("initial must be a string or an object");
  reject_unknown(j, {"kind", "p", "atoms"}, "initial");
  MeasureSpec m;
  m.kind = parse_kind(j.at("kind").get<std::string>());
  if (m.kind == MeasureSpec::Kind::PowerLaw) m.p = j.at("p").get<double>();
  if (m.kind == MeasureSpec::Kind::Discrete) {
    for (const auto& a : j.at("atoms")) {
      if (a.size() != 2) throw ConfigError("discrete atoms are [mass, weight] pairs");
      m.atoms.push_back({a[0].get<double>(), a[1].get<double>()});
    }
  }
  if (m.kind == MeasureSpec::Kind::Arms) {
    for (const auto& a : j.at("atoms")) {
      if (a.size() != 3) throw ConfigError("arm atoms are [arms, mass, weight] triples");
      m.arm_atoms.push_back({a[0].get<int>(), a[1].get<int>(), a[2].get<double>()});
    }
  }
  return m;
}

}  // namespace

// --- MeasureSpec ----------------------------------------------------------------

MassMeasure MeasureSpec::mass_measure() const {
  try {
    switch (kind) {
      case Kind::Monodisperse: return MassMeasure::monodisperse();
      case Kind::Exponential: return MassMeasure::exponential();
      case Kind::PowerLaw: return MassMeasure::power_law(p);
      case Kind::Discrete: return MassMeasure::discrete(atoms);
      case Kind::Arms: break;
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid initial measure: ") + e.what());
  }
  throw ConfigError("the classical models need mass-only initial data, not an arm measure");
}

ArmMeasure MeasureSpec::arm_measure() const {
  if (kind != Kind::Arms) throw ConfigError("the arms models need an arm measure (arms: or arm-atoms:)");
  try {
    return ArmMeasure::from_atoms(arm_atoms);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid arm measure: ") + e.what());
  }
}

MeasureSpec parse_measure_spec(std::string_view text) {
  const auto colon = text.find(':');
  const std::string head(text.substr(0, colon));
  const std::string body = colon == std::string_view::npos ? "" : std::string(text.substr(colon + 1));
  MeasureSpec m;
  if (head == "monodisperse" || head == "exponential") {
    if (!body.empty()) throw ConfigError("'" + head + "' takes no parameters");
    m.kind = head == "monodisperse" ? MeasureSpec::Kind::Monodisperse : MeasureSpec::Kind::Exponential;
  } else if (head == "power-law") {
    m.kind = MeasureSpec::Kind::PowerLaw;
    m.p = to_double(body, "power-law exponent");
  } else if (head == "discrete" || head == "arms" || head == "arm-atoms") {
    if (body.empty()) throw ConfigError("'" + head + "' needs at least one atom");
    m.kind = head == "discrete" ? MeasureSpec::Kind::Discrete : MeasureSpec::Kind::Arms;
    for (const auto& item : split(body, ',')) {
      const auto kv = split(item, '=');
      if (kv.size() != 2) throw ConfigError("atom '" + item + "' is not of the form key=weight");
      const double w = to_double(kv[1], "atom weight");
      if (head == "discrete") {
        m.atoms.push_back({to_double(kv[0], "atom mass"), w});
      } else if (head == "arms") {
        m.arm_atoms.push_back({to_int(kv[0], "arm count"), 1, w});
      } else {
        const auto am = split(kv[0], ':');
        if (am.size() != 2) throw ConfigError("arm atom '" + item + "' is not of the form arms:mass=weight");
        m.arm_atoms.push_back({to_int(am[0], "arm count"), to_int(am[1], "atom mass"), w});
      }
    }
  } else {
    throw ConfigError("unknown measure '" + std::string(text) +
                      "' (expected monodisperse, exponential, power-law:P, discrete:..., arms:... or arm-atoms:...)");
  }
  return m;
}

std::string to_string(const MeasureSpec& m) {
  std::string out;
  switch (m.kind) {
    case MeasureSpec::Kind::Monodisperse: return "monodisperse";
    case MeasureSpec::Kind::Exponential: return "exponential";
    case MeasureSpec::Kind::PowerLaw: return "power-law:" + format_number(m.p);
    case MeasureSpec::Kind::Discrete:
      out = "discrete:";
      for (std::size_t i = 0; i < m.atoms.size(); ++i) {
        if (i) out += ',';
        out += format_number(m.atoms[i].mass) + "=" + format_number(m.atoms[i].weight);
      }
      return out;
    case MeasureSpec::Kind::Arms: {
      const bool mono = unit_mass(m.arm_atoms);
      out = mono ? "arms:" : "arm-atoms:";
      for (std::size_t i = 0; i < m.arm_atoms.size(); ++i) {
        const auto& a = m.arm_atoms[i];
        if (i) out += ',';
        out += std::to_string(a.arms);
        if (!mono) out += ":" + std::to_string(a.mass);
        out += "=" + format_number(a.weight);
      }
      return out;
    }
  }
  return out;
}

// --- grid / outputs -------------------------------------------------------------

std::vector<double> TimeGrid::points() const {
  std::vector<double> pts;
  if (count < 1) return pts;
  pts.resize(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double u = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    pts[static_cast<std::size_t>(i)] =
        spacing == Spacing::Linear ? start + u * (end - start) : start * std::pow(end / start, u);
  }
  pts.front() = start;
  if (count > 1) pts.back() = end;
  return pts;
}

std::string_view to_string(Output output) noexcept {
  switch (output) {
    case Output::Trajectory: return "trajectory";
    case Output::Concentrations: return "concentrations";
    case Output::Limits: return "limits";
    case Output::Validate: return "validate";
  }
  return "?";
}

Output parse_output(std::string_view text) {
  for (auto o : {Output::Trajectory, Output::Concentrations, Output::Limits, Output::Validate}) {
    if (to_string(o) == text) return o;
  }
  throw ConfigError("unknown output '" + std::string(text) + "'");
}

// --- RunConfig ------------------------------------------------------------------

void RunConfig::validate() const {
  const auto& g = time_grid;
  if (!(g.count >= 2)) throw ConfigError("time grid needs count >= 2 (got " + std::to_string(g.count) + ")");
  if (!(g.start >= 0.0) || !std::isfinite(g.start)) throw ConfigError("time grid needs start >= 0");
  if (!(g.end > g.start) || !std::isfinite(g.end)) throw ConfigError("time grid needs a finite end > start");
  if (g.spacing == Spacing::Geometric && !(g.start > 0.0))
    throw ConfigError("geometric time grid needs start > 0");
  solver.validate();

  if (is_arms(model)) {
    if (!initial.is_arms())
      throw ConfigError("model " + std::string(to_string(model)) + " needs an arm measure (arms: or arm-atoms:)");
    const ArmMeasure arms = initial.arm_measure();
    if (!(arms.A0() > 0.0)) throw ConfigError("arm measure needs A0 = <c0, a> > 0");
  } else {
    if (initial.is_arms())
      throw ConfigError("model " + std::string(to_string(model)) + " needs mass-only initial data");
    const MassMeasure mass = initial.mass_measure();
    if (model == Model::Flory && std::isinf(mass.moments().M0))
      throw ConfigError("the Flory model makes sense only if the initial mass <mu0, m> is finite");
  }

  if (oracle.m_max < 2) throw ConfigError("oracle m_max must be at least 2");
  if (oracle.a_max < 0) throw ConfigError("oracle a_max must be nonnegative");
  if (!(oracle.dt > 0.0)) throw ConfigError("oracle dt must be positive");
  if (!(oracle.tol > 0.0)) throw ConfigError("oracle tolerance must be positive");
  if (!(concentrations.t >= 0.0) || !std::isfinite(concentrations.t))
    throw ConfigError("concentration time must be finite and >= 0");
  if (concentrations.m_max < 1) throw ConfigError("concentration m_max must be at least 1");
  if (concentrations.a_max < 0) throw ConfigError("concentration a_max must be nonnegative");
}

std::string RunConfig::to_json() const {
  json j;
  j["model"] = to_string(model);
  j["initial"] = measure_to_json(initial);
  j["time_grid"] = {{"start", time_grid.start},
                    {"end", time_grid.end},
                    {"count", time_grid.count},
                    {"spacing", spacing_name(time_grid.spacing)}};
  j["outputs"] = json::array();
  for (auto o : outputs) j["outputs"].push_back(to_string(o));
  j["solver"] = {{"root_tol", solver.root_tol},
                 {"max_iter", solver.max_iter},
                 {"ode_dt", solver.ode_dt},
                 {"ode_adaptive", solver.ode_adaptive}};
  j["oracle"] = {{"flavor", to_string(oracle.flavor)},
                 {"m_max", oracle.m_max},
                 {"a_max", oracle.a_max},
                 {"dt", oracle.dt},
                 {"tol", oracle.tol}};
  j["concentrations"] = {{"t", concentrations.t}, {"m_max", concentrations.m_max}, {"a_max", concentrations.a_max}};
  return j.dump(2) + "\n";
}

RunConfig RunConfig::from_json(std::string_view text) {
  RunConfig c;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
    reject_unknown(j, {"model", "initial", "time_grid", "outputs", "solver", "oracle", "concentrations"}, "config");
    if (j.contains("model")) c.model = parse_model(j["model"].get<std::string>());
    if (j.contains("initial")) c.initial = measure_from_json(j["initial"]);
    if (j.contains("time_grid")) {
      const auto& g = j["time_grid"];
      reject_unknown(g, {"start", "end", "count", "spacing"}, "time_grid");
      c.time_grid.start = g.value("start", c.time_grid.start);
      c.time_grid.end = g.value("end", c.time_grid.end);
      c.time_grid.count = g.value("count", c.time_grid.count);
      if (g.contains("spacing")) c.time_grid.spacing = parse_spacing(g["spacing"].get<std::string>());
    }
    if (j.contains("outputs")) {
      c.outputs.clear();
      for (const auto& o : j["outputs"]) c.outputs.insert(parse_output(o.get<std::string>()));
    }
    if (j.contains("solver")) {
      const auto& s = j["solver"];
      reject_unknown(s, {"root_tol", "max_iter", "ode_dt", "ode_adaptive"}, "solver");
      c.solver.root_tol = s.value("root_tol", c.solver.root_tol);
      c.solver.max_iter = s.value("max_iter", c.solver.max_iter);
      c.solver.ode_dt = s.value("ode_dt", c.solver.ode_dt);
      c.solver.ode_adaptive = s.value("ode_adaptive", c.solver.ode_adaptive);
    }
    if (j.contains("oracle")) {
      const auto& o = j["oracle"];
      reject_unknown(o, {"flavor", "m_max", "a_max", "dt", "tol"}, "oracle");
      if (o.contains("flavor")) c.oracle.flavor = parse_flavor(o["flavor"].get<std::string>());
      c.oracle.m_max = o.value("m_max", c.oracle.m_max);
      c.oracle.a_max = o.value("a_max", c.oracle.a_max);
      c.oracle.dt = o.value("dt", c.oracle.dt);
      c.oracle.tol = o.value("tol", c.oracle.tol);
    }
    if (j.contains("concentrations")) {
      const auto& s = j["concentrations"];
      reject_unknown(s, {"t", "m_max", "a_max"}, "concentrations");
      c.concentrations.t = s.value("t", c.concentrations.t);
      c.concentrations.m_max = s.value("m_max", c.concentrations.m_max);
      c.concentrations.a_max = s.value("a_max", c.concentrations.a_max);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return from_json(text.str());
}

}  // namespace gelsolve
