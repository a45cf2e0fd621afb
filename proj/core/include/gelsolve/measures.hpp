#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace gelsolve {

/// Extended-real +infinity. Divergent moments and generating-function limits
/// are returned as this value, never as an overflow by-product.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

struct MassAtom {
  double mass;
  double weight;
};

struct Monodisperse {};
struct DiscreteMass {
  std::vector<MassAtom> atoms;
};
/// mu0(dm) = exp(-m) dm
struct ExponentialDensity {};
/// mu0(dm) = m^{-p} dm with 1 < p < 2
struct PowerLawDensity {
  double p;
};

struct Moments {
  double M0;  ///< <mu0, m>, possibly +inf
  double K;   ///< <mu0, m^2>, possibly +inf
  double m0;  ///< inf supp mu0
};

/// Initial mass distribution mu0 of the classical (arm-free) models together
/// with its generating function g0(x) = <mu0, m x^m>.
///
/// Parametric families are evaluated through closed forms; no quadrature is
/// involved. Objects are immutable once constructed.
class MassMeasure {
 public:
  using Kind = std::variant<Monodisperse, DiscreteMass, ExponentialDensity, PowerLawDensity>;

  static MassMeasure monodisperse();
  static MassMeasure discrete(std::vector<MassAtom> atoms);
  static MassMeasure exponential();
  static MassMeasure power_law(double p);

  const Kind& kind() const noexcept { return kind_; }
  std::string name() const;

  Moments moments() const;

  /// g0, g0' or g0'' at x in [0,1]. Divergent monotone limits (x = 1 for
  /// infinite-mass data, x = 0 for densities charging small masses) are +inf.
  double g0(double x, int order = 0) const;

  /// x * g0'(x); finite at x = 0 for every variant (the limit is 0 or the
  /// weight of a unit-mass atom).
  double x_g0_prime(double x) const;

  /// g0 and x g0'(x) at x = exp(-lambda), lambda in [0, inf]. Resolves
  /// points closer to x = 1 than double precision in x allows.
  double g0_log(double lambda) const;
  double x_g0_prime_log(double lambda) const;

  /// g0^{(order)} evaluated at x = 1 - s, accurate for tiny s.
  double g0_near_one(double s, int order) const;

  /// mu0({m0}), the weight of the smallest atom; 0 for densities.
  double bottom_atom_weight() const;

  /// True when every atom sits on a positive integer mass.
  bool on_integer_lattice() const;

  /// Weights indexed by integer mass m = 0..max_mass (index 0 always 0).
  /// Throws DomainError for non-lattice measures.
  std::vector<double> lattice_weights(std::size_t max_mass) const;

 private:
  explicit MassMeasure(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

struct ArmAtom {
  int arms;
  int mass;
  double weight;
};

/// Arm law mu(a) of monodisperse arms data, keyed by arm count.
using ArmLaw = std::map<int, double>;

/// Initial concentrations c0(a, m) of the limited-aggregation models, with
/// finite support on arms x mass, and the bivariate generating function
/// k0(x, y) = sum a c0(a,m) x^{a-1} y^m.
class ArmMeasure {
 public:
  static ArmMeasure from_atoms(std::vector<ArmAtom> atoms);
  /// c0(a, m) = mu(a) 1{m = 1}
  static ArmMeasure monodisperse(const ArmLaw& mu);

  const std::vector<ArmAtom>& atoms() const noexcept { return atoms_; }

  double total() const noexcept { return total_; }  ///< <c0, 1>
  double A0() const noexcept { return a0_; }        ///< <c0, a>
  double K() const noexcept { return k_; }          ///< <c0, a(a-1)>
  int max_arms() const noexcept { return max_arms_; }
  int max_mass() const noexcept { return max_mass_; }

  bool is_monodisperse() const noexcept { return max_mass_ == 1; }
  /// Throws DomainError unless every atom has mass 1.
  ArmLaw arm_law() const;

  /// k0 or its x-derivatives (order 0, 1, 2) at (x, y) in the unit square.
  double k0(double x, double y, int x_order = 0) const;

 private:
  ArmMeasure() = default;
  std::vector<ArmAtom> atoms_;
  double total_ = 0.0;
  double a0_ = 0.0;
  double k_ = 0.0;
  int max_arms_ = 0;
  int max_mass_ = 0;
};

/// Size-biased offspring measure nu(m) = (m+1) mu(m+1) on {0, 1, ...}.
/// Not required to be a probability measure.
class NuMeasure {
 public:
  explicit NuMeasure(std::vector<double> values);

  const std::vector<double>& values() const noexcept { return values_; }
  double operator[](std::size_t m) const noexcept {
    return m < values_.size() ? values_[m] : 0.0;
  }
  double total() const noexcept;
  /// nu(0) == 0: every particle has zero or at least two arms and the
  /// limiting concentrations for m >= 2 vanish.
  bool degenerate() const noexcept { return (*this)[0] <= 0.0; }

 private:
  std::vector<double> values_;
};

NuMeasure nu_from_mu(const ArmLaw& mu);

/// nu^{*m}(0..max_index) by iterated discrete convolution; nu^{*1} = nu.
std::vector<double> conv_power(const NuMeasure& nu, int m, std::size_t max_index);

}  // namespace gelsolve
