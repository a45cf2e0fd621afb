#include "gelsolve/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gelsolve/errors.hpp"

namespace gelsolve {

std::string_view to_string(Flavor flavor) noexcept {
  return flavor == Flavor::NoBigCoagulation ? "no-big-coagulation" : "gel-interacting";
}

Flavor parse_flavor(std::string_view text) {
  if (text == "no-big-coagulation") return Flavor::NoBigCoagulation;
  if (text == "gel-interacting") return Flavor::GelInteracting;
  throw ConfigError("unknown flavor '" + std::string(text) + "' (expected no-big-coagulation or gel-interacting)");
}

double OracleState::conc(int m) const {
  if (is_arms() || m < 1 || m > m_max) throw DomainError("mass index outside the classical lattice");
  return c[static_cast<std::size_t>(m)];
}

double OracleState::conc(int a, int m) const {
  if (!is_arms() || a < 0 || a > a_max || m < 1 || m > m_max) throw DomainError("index outside the arms lattice");
  return c[static_cast<std::size_t>(m) * static_cast<std::size_t>(a_max + 1) + static_cast<std::size_t>(a)];
}

double OracleState::sol_mass() const {
  double s = 0.0;
  if (!is_arms()) {
    for (int m = 1; m <= m_max; ++m) s += m * c[static_cast<std::size_t>(m)];
    return s;
  }
  const auto w = static_cast<std::size_t>(a_max + 1);
  for (int m = 1; m <= m_max; ++m) {
    for (std::size_t a = 0; a < w; ++a) s += m * c[static_cast<std::size_t>(m) * w + a];
  }
  return s;
}

double OracleState::arms_total() const {
  if (!is_arms()) throw DomainError("arm count needs the arms layout");
  double s = 0.0;
  const auto w = static_cast<std::size_t>(a_max + 1);
  for (int m = 1; m <= m_max; ++m) {
    for (std::size_t a = 1; a < w; ++a) s += static_cast<double>(a) * c[static_cast<std::size_t>(m) * w + a];
  }
  return s;
}

OracleState oracle_initial(const MassMeasure& measure, int m_max) {
  if (m_max < 2) throw DomainError("M_max must be at least 2");
  OracleState s;
  s.m_max = m_max;
  s.c = measure.lattice_weights(static_cast<std::size_t>(m_max));
  return s;
}

OracleState oracle_initial(const ArmMeasure& measure, int a_max, int m_max) {
  if (m_max < 2 || a_max < 1) throw DomainError("need M_max >= 2 and A_max >= 1");
  OracleState s;
  s.m_max = m_max;
  s.a_max = a_max;
  const auto w = static_cast<std::size_t>(a_max + 1);
  s.c.assign(static_cast<std::size_t>(m_max + 1) * w, 0.0);
  for (const auto& [a, m, weight] : measure.atoms()) {
    if (a <= a_max && m <= m_max) s.c[static_cast<std::size_t>(m) * w + static_cast<std::size_t>(a)] += weight;
  }
  return s;
}

namespace {

constexpr double kClampTol = 1e-12;

// Right-hand side of the truncated system; the last entry of dy is the gel-mass rate.
class TruncatedSystem {
 public:
  TruncatedSystem(Model model, Flavor flavor, const OracleState& init)
      : flavor_(flavor), M_(init.m_max), A_(init.a_max) {
    initial_mass_ = init.sol_mass() + init.gel_mass;
    if (init.is_arms()) initial_arms_ = init.arms_total();
    gel_term_ = flavor == Flavor::GelInteracting && is_flory_type(model);
  }

  void operator()(const std::vector<double>& y, double t, std::vector<double>& dy) {
    std::fill(dy.begin(), dy.end(), 0.0);
    if (A_ < 0) {
      classic(y, dy);
    } else {
      arms(y, t, dy);
    }
  }

 private:
  void classic(const std::vector<double>& c, std::vector<double>& dc) {
    const int M = M_;
    prefix_.assign(static_cast<std::size_t>(M + 1), 0.0);
    for (int m = 1; m <= M; ++m) prefix_[m] = prefix_[m - 1] + m * c[m];
    const double sol = prefix_[M];
    for (int m1 = 1; 2 * m1 <= M; ++m1) {
      const double c1 = c[m1];
      if (c1 == 0.0) continue;
      for (int m2 = m1; m1 + m2 <= M; ++m2) {
        double r = static_cast<double>(m1) * m2 * c1 * c[m2];
        if (m1 == m2) r *= 0.5;
        dc[m1 + m2] += r;
      }
    }
    const double gel_rate = gel_term_ ? std::max(0.0, initial_mass_ - sol) : 0.0;
    for (int m = 1; m <= M; ++m) {
      const double partners = flavor_ == Flavor::NoBigCoagulation ? prefix_[M - m] : sol;
      dc[m] -= m * c[m] * (partners + gel_rate);
    }
    finish_gel(dc, [&](int idx) { return static_cast<double>(idx); }, M + 1);
  }

  void arms(const std::vector<double>& c, double t, std::vector<double>& dc) {
    const int M = M_;
    const int A = A_;
    const auto W = static_cast<std::size_t>(A + 1);
    auto at = [W](int a, int m) { return static_cast<std::size_t>(m) * W + static_cast<std::size_t>(a); };

    top_.assign(static_cast<std::size_t>(M + 1), -1);
    for (int m = 1; m <= M; ++m) {
      for (int a = A; a >= 1; --a) {
        if (c[at(a, m)] != 0.0) {
          top_[m] = a;
          break;
        }
      }
    }
    // 2D prefix sums of a c(a, m) over m' <= m, a' <= a.
    prefix_.assign(static_cast<std::size_t>(M + 1) * W, 0.0);
    for (int m = 1; m <= M; ++m) {
      double row = 0.0;
      for (int a = 0; a <= A; ++a) {
        row += a * c[at(a, m)];
        prefix_[at(a, m)] = prefix_[at(a, m - 1)] + row;
      }
    }
    const double total_arms = prefix_[at(A, M)];

    for (int m1 = 1; 2 * m1 <= M; ++m1) {
      if (top_[m1] < 1) continue;
      for (int m2 = m1; m1 + m2 <= M; ++m2) {
        if (top_[m2] < 1) continue;
        const int m = m1 + m2;
        const double half = m1 == m2 ? 0.5 : 1.0;
        for (int a1 = 1; a1 <= top_[m1]; ++a1) {
          const double w1 = half * a1 * c[at(a1, m1)];
          if (w1 == 0.0) continue;
          const int a2_max = std::min(top_[m2], A + 2 - a1);
          for (int a2 = 1; a2 <= a2_max; ++a2) dc[at(a1 + a2 - 2, m)] += w1 * a2 * c[at(a2, m2)];
        }
      }
    }
    const double gel_rate =
        gel_term_ ? std::max(0.0, initial_arms_ / (1.0 + t * initial_arms_) - total_arms) : 0.0;
    for (int m = 1; m <= M; ++m) {
      for (int a = 1; a <= top_[m]; ++a) {
        double partners = total_arms;
        if (flavor_ == Flavor::NoBigCoagulation) partners = prefix_[at(std::min(A, A + 2 - a), M - m)];
        dc[at(a, m)] -= a * c[at(a, m)] * (partners + gel_rate);
      }
    }
    finish_gel(dc, [W](int idx) { return static_cast<double>(static_cast<std::size_t>(idx) / W); },
               static_cast<int>(static_cast<std::size_t>(M + 1) * W));
  }

  // Whatever sol mass disappears goes to the gel.
  template <class MassOf>
  void finish_gel(std::vector<double>& dy, MassOf&& mass_of, int n) {
    if (flavor_ == Flavor::NoBigCoagulation) return;
    double loss = 0.0;
    for (int i = 0; i < n; ++i) loss -= mass_of(i) * dy[i];
    dy[static_cast<std::size_t>(n)] = loss;
  }

  Flavor flavor_;
  int M_;
  int A_;
  double initial_mass_ = 0.0;
  double initial_arms_ = 0.0;
  bool gel_term_ = false;
  std::vector<double> prefix_;
  std::vector<int> top_;
};

void clamp_negatives(std::vector<double>& y, std::size_t n, double t) {
  for (std::size_t i = 0; i < n; ++i) {
    if (y[i] >= 0.0) continue;
    if (y[i] > -kClampTol) {
      y[i] = 0.0;
      continue;
    }
    std::ostringstream os;
    os << "negative concentration " << y[i] << " at lattice index " << i << " near t = " << t
       << "; reduce dt";
    throw InstabilityError(os.str());
  }
}

}  // namespace

std::vector<OracleState> integrate(Model model, Flavor flavor, const OracleState& initial,
                                   const std::vector<double>& sample_times, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
  if (initial.m_max < 2) throw DomainError("M_max must be at least 2");
  if (initial.is_arms() != is_arms(model)) throw ModelError("oracle state layout does not match the model");
  TruncatedSystem rhs(model, flavor, initial);

  const std::size_t n = initial.c.size();
  std::vector<double> y(initial.c);
  y.push_back(initial.gel_mass);
  std::vector<double> k1(n + 1), k2(n + 1), k3(n + 1), k4(n + 1), tmp(n + 1);
  double t = initial.t;

  auto step = [&](double h) {
    rhs(y, t, k1);
    for (std::size_t i = 0; i <= n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    rhs(tmp, t + 0.5 * h, k2);
    for (std::size_t i = 0; i <= n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    rhs(tmp, t + 0.5 * h, k3);
    for (std::size_t i = 0; i <= n; ++i) tmp[i] = y[i] + h * k3[i];
    rhs(tmp, t + h, k4);
    for (std::size_t i = 0; i <= n; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    t += h;
    clamp_negatives(y, n, t);
  };

  std::vector<OracleState> out;
  out.reserve(sample_times.size());
  for (double target : sample_times) {
    if (!(target >= t - 1e-12)) throw DomainError("sample times must be nondecreasing and >= the initial time");
    const double span = target - t;
    if (span > 0.0) {
      const auto steps = static_cast<long long>(std::ceil(span / dt - 1e-9));
      const double h = span / static_cast<double>(steps);
      const double start = t;
      for (long long s = 0; s < steps; ++s) step(h);
      t = start + span;  // land exactly on the sample time
    }
    OracleState st = initial;
    st.t = target;
    st.c.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
    st.gel_mass = y[n];
    out.push_back(std::move(st));
  }
  return out;
}

std::vector<OracleState> integrate(Model model, Flavor flavor, const OracleState& initial, double t_end,
                                   double dt, std::size_t samples) {
  if (samples < 2) throw DomainError("need at least two samples");
  std::vector<double> times(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    times[i] = initial.t + (t_end - initial.t) * static_cast<double>(i) / static_cast<double>(samples - 1);
  }
  times.back() = t_end;
  return integrate(model, flavor, initial, times, dt);
}

QuantityTrajectory extract(const std::vector<OracleState>& states, Quantity quantity, int max_mass,
                           int max_arms) {
  QuantityTrajectory q;
  for (const auto& s : states) {
    q.t.push_back(s.t);
    switch (quantity) {
      case Quantity::Mass:
        q.values.push_back({s.sol_mass()});
        break;
      case Quantity::Arms:
        q.values.push_back({s.arms_total()});
        break;
      case Quantity::Concentrations: {
        std::vector<double> v;
        const int mm = std::min(max_mass > 0 ? max_mass : s.m_max, s.m_max);
        if (s.is_arms()) {
          const int aa = std::min(max_arms > 0 ? max_arms : s.a_max, s.a_max);
          for (int m = 1; m <= mm; ++m) {
            for (int a = 0; a <= aa; ++a) v.push_back(s.conc(a, m));
          }
        } else {
          for (int m = 1; m <= mm; ++m) v.push_back(s.conc(m));
        }
        q.values.push_back(std::move(v));
        break;
      }
    }
  }
  return q;
}

ErrorReport compare(const QuantityTrajectory& analytic, const QuantityTrajectory& oracle, double tolerance) {
  if (analytic.t.size() != oracle.t.size() || analytic.values.size() != analytic.t.size() ||
      oracle.values.size() != oracle.t.size()) {
    throw UsageError("trajectories have different numbers of time points");
  }
  ErrorReport rep;
  rep.tolerance = tolerance;
  for (std::size_t i = 0; i < analytic.t.size(); ++i) {
    if (std::abs(analytic.t[i] - oracle.t[i]) > 1e-12 * std::max(1.0, std::abs(analytic.t[i]))) {
      throw UsageError("trajectories are sampled on different time grids");
    }
    const auto& a = analytic.values[i];
    const auto& o = oracle.values[i];
    if (a.size() != o.size()) throw UsageError("quantity vectors have different lengths");
    ErrorRow row{analytic.t[i], 0.0, 0.0};
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double err = std::abs(a[j] - o[j]);
      row.max_abs = std::max(row.max_abs, err);
      if (err > 0.0) row.max_rel = std::max(row.max_rel, a[j] != 0.0 ? err / std::abs(a[j]) : kInfinity);
    }
    rep.max_abs = std::max(rep.max_abs, row.max_abs);
    rep.max_rel = std::max(rep.max_rel, row.max_rel);
    rep.rows.push_back(row);
  }
  rep.pass = rep.max_abs <= tolerance;
  return rep;
}

}  // namespace gelsolve
