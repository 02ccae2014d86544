#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "lcaforms/distributions.hpp"
#include "lcaforms/group_core.hpp"
#include "lcaforms/linear_forms.hpp"

namespace lcaforms {

// ---------------------------------------------------------------------------
// Scalar maps of the doubling equations.
// ---------------------------------------------------------------------------

/// Solved form of the mode-A equation: f(2y) = f(y)^2 / (2 - f(y)^2).
inline double forward_value(double t) {
  if (!(std::abs(t) <= 1.0)) throw std::domain_error("forward_value: |t| > 1");
  return t * t / (2.0 - t * t);
}

inline Rational forward_value(const Rational& t) {
  if (abs(t) > 1) throw std::domain_error("forward_value: |t| > 1");
  return t * t / (2 - t * t);
}

/// Nonnegative preimage of forward_value on [0, 1].
inline double halve_value(double t) {
  if (t < 0.0) throw std::domain_error("halve_value: t < 0 has no preimage");
  if (!(t <= 1.0)) throw std::domain_error("halve_value: t > 1");
  return std::sqrt(2.0 * t / (1.0 + t));
}

/// Mode-B forward map f(2y) = 2 f(y)^2 - 1.
inline double forward_value_b(double t) { return 2.0 * t * t - 1.0; }

/// Nonnegative preimage of forward_value_b (cosine half angle).
inline double halve_value_b(double t) {
  if (!(t >= -1.0 && t <= 1.0)) throw std::domain_error("halve_value_b: t outside [-1, 1]");
  return std::sqrt((1.0 + t) / 2.0);
}

namespace detail {

// forward_value with the open interval (0, 1) kept closed under rounding, so
// that F^k(t) lands on 0 or 1 exactly iff t is 0 or +-1.
inline double forward_step_exact(double t) {
  if (t == 0.0) return 0.0;
  if (std::abs(t) == 1.0) return 1.0;
  const double r = forward_value(t);
  return std::clamp(r, std::numeric_limits<double>::denorm_min(), std::nextafter(1.0, 0.0));
}

}  // namespace detail

/// {-1, -0.9, ..., 0.9, 1} together with {+-sech(k/4) : k = 1..8}.
inline std::vector<double> default_root_grid() {
  std::vector<double> grid;
  for (int k = -10; k <= 10; ++k) grid.push_back(k / 10.0);
  for (int k = 1; k <= 8; ++k) {
    const double s = 1.0 / std::cosh(k / 4.0);
    grid.push_back(s);
    grid.push_back(-s);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

/// Points t in [-1, 1] with (forward_value_b)^m (t) = t. With t = cos(theta)
/// the m-fold map is cos(2^m theta), so the seeds cos(2 pi k / (2^m -+ 1))
/// are Newton-polished against the iterated map itself.
inline std::vector<double> chebyshev_cycle_points(std::size_t m) {
  if (m == 0 || m > 16) throw std::invalid_argument("cycle length out of range");
  const auto h = [m](double t) {
    double v = t;
    for (std::size_t k = 0; k < m; ++k) v = forward_value_b(v);
    return v - t;
  };
  const auto dh = [m](double t) {
    double v = t;
    double d = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
      d *= 4.0 * v;
      v = forward_value_b(v);
    }
    return d - 1.0;
  };
  const std::int64_t n = std::int64_t{1} << m;
  std::vector<double> roots;
  for (const std::int64_t period : {n - 1, n + 1}) {
    for (std::int64_t k = 0; 2 * k <= period; ++k) {
      double r = std::cos(2.0 * std::numbers::pi * static_cast<double>(k) /
                          static_cast<double>(period));
      for (int it = 0; it < 8; ++it) {
        const double d = dh(r);
        if (d == 0.0) break;
        const double next = std::clamp(r - h(r) / d, -1.0, 1.0);
        if (std::abs(next - r) < 1e-16) break;
        r = next;
      }
      if (std::abs(h(r)) > 1e-10) throw std::logic_error("cycle root polishing did not converge");
      roots.push_back(r);
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              roots.end());
  if (roots.size() != static_cast<std::size_t>(n)) {
    throw std::logic_error("expected " + std::to_string(n) + " cycle points, found " +
                           std::to_string(roots.size()));
  }
  return roots;
}

// ---------------------------------------------------------------------------
// Distributions m_K and m_K * E_x over Corwin subgroups K.
// ---------------------------------------------------------------------------

struct FamilyMember {
  Subgroup k;
  std::optional<std::size_t> shift;  ///< x with 2x = 0, x not in K
  Dist law;
  CharFn cf;  ///< exact: indicator of A(Y, K) times (x, y)
  std::string label;
};

inline std::vector<FamilyMember> corwin_family(const FiniteAbelianGroup& x_group) {
  std::vector<FamilyMember> family;
  const auto order_two = elements_of_order_two(x_group);
  const auto add = [&family](FamilyMember m) {
    for (const auto& f : family) {
      if (f.law == m.law) return;
    }
    family.push_back(std::move(m));
  };
  for (const auto& k : all_subgroups(x_group)) {
    if (!is_corwin(k)) continue;
    const auto ann = annihilator(k);
    const auto haar = haar_on(k);
    add(FamilyMember{k, std::nullopt, haar, CharFn::indicator(ann), "m_K K=" + k.to_string()});
    for (const auto x : order_two) {
      if (k.contains(x)) continue;
      std::vector<Rational> cf(x_group.order(), Rational(0));
      for (const auto y : ann.indices()) cf[y] = x_group.phase_numerator(x, y) == 0 ? 1 : -1;
      add(FamilyMember{k, x, convolve(haar, Dist::point(x_group, x)),
                       CharFn::from_exact(x_group, std::move(cf)),
                       "m_K*E_x K=" + k.to_string() + " x=" + x_group.format_index(x)});
    }
  }
  return family;
}

// ---------------------------------------------------------------------------
// Exhaustive real solutions of the doubling equations on a finite dual.
// ---------------------------------------------------------------------------

enum class SolutionTag {
  HaarCorwin,             ///< CF of m_K, K Corwin
  HaarTimesOrder2,        ///< CF of m_K * E_x, 2x = 0
  TwoPointSymmetric,      ///< mode B: CF of (E_x + E_-x) / 2
  OtherPositiveDefinite,  ///< mode B: positive definite, not two-point
  NotPositiveDefinite,
};

inline const char* to_string(SolutionTag t) {
  switch (t) {
    case SolutionTag::HaarCorwin: return "HaarCorwin";
    case SolutionTag::HaarTimesOrder2: return "HaarTimesOrder2";
    case SolutionTag::TwoPointSymmetric: return "TwoPointSymmetric";
    case SolutionTag::OtherPositiveDefinite: return "OtherPositiveDefinite";
    case SolutionTag::NotPositiveDefinite: return "NotPositiveDefinite";
  }
  return "?";
}

struct Solution {
  CharFn f;
  SolutionTag tag = SolutionTag::NotPositiveDefinite;
  std::optional<std::size_t> match;  ///< family index (mode A) or x (mode B)
  std::string detail;

  bool positive_definite() const { return tag != SolutionTag::NotPositiveDefinite; }
};

struct SolutionSet {
  FiniteAbelianGroup dual;
  EquationMode mode = EquationMode::A;
  std::vector<Solution> candidates;  ///< real, symmetric solutions; canonical order
  std::size_t assignments_tried = 0;

  std::vector<Solution> positive_definite() const {
    std::vector<Solution> out;
    for (const auto& s : candidates) {
      if (s.positive_definite()) out.push_back(s);
    }
    return out;
  }
};

namespace detail {

class SolutionSearch {
 public:
  SolutionSearch(const FiniteAbelianGroup& dual, EquationMode mode, std::vector<double> grid)
      : dual_(dual), mode_(mode), grid_(std::move(grid)), graph_(doubling_graph(dual)),
        value_(dual.order(), kUnset) {}

  std::vector<std::vector<double>> run() {
    assign_cycle(0);
    return std::move(found_);
  }

  std::size_t tried() const { return tried_; }

 private:
  static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

  bool same(double a, double b) const {
    return mode_ == EquationMode::A ? a == b : std::abs(a - b) <= kFourierTol;
  }

  // Sets y and checks real hermitian symmetry f(-y) = f(y) against whatever
  // is already assigned.
  bool set(std::size_t y, double v, std::vector<std::size_t>& trail) {
    if (!std::isnan(value_[y])) return same(value_[y], v);
    value_[y] = v;
    trail.push_back(y);
    const auto ny = dual_.neg(y);
    return std::isnan(value_[ny]) || same(value_[ny], v);
  }

  void undo(std::vector<std::size_t>& trail) {
    for (const auto y : trail) value_[y] = kUnset;
    trail.clear();
  }

  double step(double t) const {
    return mode_ == EquationMode::A ? forward_step_exact(t) : forward_value_b(t);
  }

  std::vector<double> cycle_starts(std::size_t length, bool contains_zero) const {
    if (contains_zero) return {1.0};
    if (mode_ == EquationMode::A) return {0.0, 1.0};  // t = t^2 / (2 - t^2): t in {0, 1, -2}
    return chebyshev_cycle_points(length);
  }

  void assign_cycle(std::size_t c) {
    if (c == graph_.cycles.size()) {
      assign_chain(0);
      return;
    }
    const auto& cycle = graph_.cycles[c];
    const bool has_zero = cycle.front() == 0;
    for (const double start : cycle_starts(cycle.size(), has_zero)) {
      std::vector<std::size_t> trail;
      bool ok = true;
      double v = start;
      for (const auto y : cycle) {
        if (!set(y, v, trail)) {
          ok = false;
          break;
        }
        v = step(v);
      }
      // Mode B closes the cycle only up to polishing accuracy.
      if (ok && !same(v, start)) ok = false;
      if (ok) assign_cycle(c + 1);
      undo(trail);
    }
  }

  void assign_chain(std::size_t k) {
    if (k == graph_.chains.size()) {
      ++tried_;
      found_.emplace_back(value_.begin(), value_.end());
      return;
    }
    const auto& chain = graph_.chains[k];
    const double target = value_[chain.feeds];
    if (mode_ == EquationMode::A) {
      for (const double t : grid_) {
        std::vector<std::size_t> trail;
        bool ok = true;
        double v = t;
        for (const auto y : chain.nodes) {
          if (!set(y, v, trail)) {
            ok = false;
            break;
          }
          v = step(v);
        }
        if (ok && v == target) assign_chain(k + 1);
        undo(trail);
      }
    } else {
      assign_branch(k, chain.nodes.size(), target);
    }
  }

  // Mode B: walk the chain backwards from the node it feeds, choosing a sign
  // for each preimage +-sqrt((1 + v) / 2).
  void assign_branch(std::size_t k, std::size_t pos, double target) {
    if (pos == 0) {
      assign_chain(k + 1);
      return;
    }
    const auto y = graph_.chains[k].nodes[pos - 1];
    const double root = halve_value_b(std::clamp(target, -1.0, 1.0));
    const std::vector<double> options = root == 0.0 ? std::vector<double>{0.0}
                                                      : std::vector<double>{root, -root};
    for (const double v : options) {
      std::vector<std::size_t> trail;
      if (set(y, v, trail)) assign_branch(k, pos - 1, v);
      undo(trail);
    }
  }

  FiniteAbelianGroup dual_;
  EquationMode mode_;
  std::vector<double> grid_;
  DoublingGraph graph_;
  std::vector<double> value_;
  std::vector<std::vector<double>> found_;
  std::size_t tried_ = 0;
};

}  // namespace detail

/// All real, symmetric solutions of the chosen equation on the dual group,
/// filtered by positive definiteness and classified.
///
/// Mode A assigns chain roots from `root_grid` and propagates forward; cycle
/// values solve t = F^m(t) in closed form. Mode B places cycle values at the
/// numerically located fixed points of the m-fold map and walks each chain
/// backwards through both preimage branches; `root_grid` is ignored there.
inline SolutionSet enumerate_solutions(const FiniteAbelianGroup& dual, EquationMode mode,
                                       const std::vector<double>& root_grid =
                                           default_root_grid()) {
  if (mode == EquationMode::A) {
    for (const double t : {-1.0, 0.0, 1.0}) {
      if (std::find(root_grid.begin(), root_grid.end(), t) == root_grid.end()) {
        throw std::invalid_argument("root grid must contain -1, 0 and 1");
      }
    }
    for (const double t : root_grid) {
      if (!(std::abs(t) <= 1.0)) throw std::invalid_argument("root grid must lie in [-1, 1]");
    }
  }

  detail::SolutionSearch search(dual, mode, root_grid);
  auto raw = search.run();
  SolutionSet set{dual, mode, {}, search.tried()};

  std::vector<FamilyMember> family;
  if (mode == EquationMode::A) family = corwin_family(dual);

  for (auto& values : raw) {
    Solution s;
    if (mode == EquationMode::A) {
      std::vector<Rational> exact;
      exact.reserve(values.size());
      for (const double v : values) exact.emplace_back(v);
      s.f = CharFn::from_exact(dual, std::move(exact));
    } else {
      s.f = CharFn::from_real(dual, values);
    }
    if (!is_positive_definite(s.f)) {
      s.tag = SolutionTag::NotPositiveDefinite;
      s.detail = "inverse Fourier transform has a negative mass";
    } else if (mode == EquationMode::A) {
      for (std::size_t i = 0; i < family.size(); ++i) {
        if (same_values(s.f, family[i].cf)) {
          s.match = i;
          s.detail = family[i].label;
          break;
        }
      }
      const bool has_shift = s.match ? family[*s.match].shift.has_value()
                                     : std::any_of(values.begin(), values.end(),
                                                   [](double v) { return v < 0; });
      s.tag = has_shift ? SolutionTag::HaarTimesOrder2 : SolutionTag::HaarCorwin;
      if (!s.match) s.detail = "positive definite but outside the Corwin family";
    } else {
      s.tag = SolutionTag::OtherPositiveDefinite;
      for (std::size_t x = 0; x < dual.order(); ++x) {
        const auto law = half_mix(Dist::point(dual, x), Dist::point(dual, dual.neg(x)));
        if (same_values(s.f, fourier(law))) {
          s.tag = SolutionTag::TwoPointSymmetric;
          s.match = x;
          s.detail = "(E_x+E_-x)/2 x=" + dual.format_index(x);
          break;
        }
      }
    }
    set.candidates.push_back(std::move(s));
  }

  std::sort(set.candidates.begin(), set.candidates.end(), [](const Solution& a, const Solution& b) {
    if (a.tag != b.tag) return a.tag < b.tag;
    for (std::size_t y = 0; y < a.f.size(); ++y) {
      if (a.f.values[y].real() != b.f.values[y].real()) {
        return a.f.values[y].real() > b.f.values[y].real();
      }
    }
    return false;
  });
  return set;
}

// ---------------------------------------------------------------------------
// Real-line predicates.
// ---------------------------------------------------------------------------

/// max over pairs of |h(u+v) + h(u-v) - 2 h(u) h(v)|.
inline double dalembert_check(const std::function<double(double)>& h,
                              const std::vector<std::pair<double, double>>& pairs) {
  double worst = 0.0;
  for (const auto& [u, v] : pairs) {
    worst = std::max(worst, std::abs(h(u + v) + h(u - v) - 2.0 * h(u) * h(v)));
  }
  return worst;
}

/// Grid points s where the real-line equation fails by more than tol.
inline std::vector<double> eq_predicate_on_grid(const std::function<double(double)>& f,
                                                const std::vector<double>& grid,
                                                EquationMode mode, double tol = kFourierTol) {
  std::vector<double> failing;
  for (const double s : grid) {
    const auto r = equation_residual(mode, std::complex<double>(f(s)), std::complex<double>(f(2 * s)));
    if (std::abs(r) > tol) failing.push_back(s);
  }
  return failing;
}

/// Minimum eigenvalue of the N x N Toeplitz matrix [f(i - j)].
inline double toeplitz_pd_sections(const std::function<double(std::int64_t)>& f, std::int64_t n) {
  if (n < 1) throw std::domain_error("toeplitz window must be >= 1");
  Eigen::MatrixXd t(n, n);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j) t(i, j) = f(i - j);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

/// Values f(0..n_max) of the mode-B equation on the integers, given f at the
/// odd integers; even values follow from f(2n) = 2 f(n)^2 - 1.
inline std::vector<double> propagate_mode_b_on_integers(const std::vector<double>& odd_values,
                                                        std::int64_t n_max) {
  if (n_max < 0) throw std::domain_error("negative window");
  std::vector<double> f(static_cast<std::size_t>(n_max) + 1, 0.0);
  f[0] = 1.0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    if (n % 2 == 1) {
      const auto k = static_cast<std::size_t>(n / 2);
      if (k >= odd_values.size()) throw std::invalid_argument("missing odd value");
      f[static_cast<std::size_t>(n)] = odd_values[k];
    } else {
      f[static_cast<std::size_t>(n)] = forward_value_b(f[static_cast<std::size_t>(n / 2)]);
    }
  }
  return f;
}

struct IntegerWindowCheck {
  double min_eigenvalue = 0.0;
  bool positive_definite = false;
  double theta = 0.0;
  double cos_deviation = 0.0;  ///< max_n |f(n) - cos(n theta)|
};

/// Toeplitz section of a symmetric sequence on {0..N-1} together with its
/// distance to cos(n theta), theta = arccos f(1).
inline IntegerWindowCheck integer_window_check(const std::vector<double>& f, std::int64_t n,
                                               double pd_tol = kFourierTol) {
  if (static_cast<std::int64_t>(f.size()) < n) throw std::invalid_argument("window too short");
  IntegerWindowCheck c;
  c.min_eigenvalue = toeplitz_pd_sections(
      [&f](std::int64_t k) { return f[static_cast<std::size_t>(k < 0 ? -k : k)]; }, n);
  c.positive_definite = c.min_eigenvalue >= -pd_tol;
  c.theta = std::acos(std::clamp(f.at(1), -1.0, 1.0));
  for (std::int64_t k = 0; k < n; ++k) {
    c.cos_deviation = std::max(
        c.cos_deviation, std::abs(f[static_cast<std::size_t>(k)] - std::cos(static_cast<double>(k) * c.theta)));
  }
  return c;
}

}  // namespace lcaforms
