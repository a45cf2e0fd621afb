#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gelsolve/characteristics.hpp"
#include "gelsolve/measures.hpp"
#include "gelsolve/oracle.hpp"

namespace gelsolve {

/// Initial data as named in a configuration.
///
/// Text form (used by --initial):
///   monodisperse | exponential | power-law:P | discrete:M=W,M=W,...
///   arms:A=W,...            (monodisperse arms law mu(a))
///   arm-atoms:A:M=W,...     (general (arms, mass, weight) triples)
/// JSON form: {"kind": "discrete", "atoms": [[m, w], ...]},
///   {"kind": "arms", "atoms": [[a, m, w], ...]}, {"kind": "power-law", "p": P}, ...
struct MeasureSpec {
  enum class Kind { Monodisperse, Exponential, PowerLaw, Discrete, Arms };

  Kind kind = Kind::Monodisperse;
  double p = 1.5;                 ///< PowerLaw exponent
  std::vector<MassAtom> atoms;    ///< Discrete
  std::vector<ArmAtom> arm_atoms; ///< Arms

  bool is_arms() const noexcept { return kind == Kind::Arms; }
  MassMeasure mass_measure() const;  ///< throws ConfigError for arm data
  ArmMeasure arm_measure() const;    ///< throws ConfigError for classical data
};

MeasureSpec parse_measure_spec(std::string_view text);
std::string to_string(const MeasureSpec& spec);

enum class Spacing { Linear, Geometric };

struct TimeGrid {
  double start = 0.0;
  double end = 4.0;
  int count = 81;
  Spacing spacing = Spacing::Linear;

  /// Grid points; the first is exactly `start` and the last exactly `end`.
  std::vector<double> points() const;
};

enum class Output { Trajectory, Concentrations, Limits, Validate };
std::string_view to_string(Output output) noexcept;
Output parse_output(std::string_view text);

struct OracleParams {
  Flavor flavor = Flavor::NoBigCoagulation;
  int m_max = 200;
  int a_max = 40;
  double dt = 1e-3;
  double tol = 1e-4;
};

/// Where and how far concentration tables are evaluated.
struct ConcentrationParams {
  double t = 0.5;
  int m_max = 30;
  int a_max = 8;
};

struct RunConfig {
  Model model = Model::Smoluchowski;
  MeasureSpec initial;
  TimeGrid time_grid;
  std::set<Output> outputs{Output::Trajectory};
  SolverConfig solver;
  OracleParams oracle;
  ConcentrationParams concentrations;

  /// Throws ConfigError naming the violated requirement.
  void validate() const;

  /// Pretty-printed JSON; parse(to_json()) reproduces the same text.
  std::string to_json() const;
  /// Missing keys keep their defaults; unknown keys are rejected. Does not
  /// call validate().
  static RunConfig from_json(std::string_view text);
  static RunConfig from_file(const std::string& path);
};

}  // namespace gelsolve
