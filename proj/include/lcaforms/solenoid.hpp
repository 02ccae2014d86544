#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>
#include <Eigen/Eigenvalues>

#include "lcaforms/fe_solver.hpp"
#include "lcaforms/rational.hpp"

namespace lcaforms {

/// Element of the rational group H_a, kept as a reduced fraction m/q, q > 0.
class HaChar {
 public:
  HaChar() = default;
  HaChar(std::int64_t num, std::int64_t den = 1) : r_(num, den) {}  // NOLINT: implicit from integers
  explicit HaChar(boost::rational<std::int64_t> r) : r_(r) {}

  std::int64_t num() const { return r_.numerator(); }
  std::int64_t den() const { return r_.denominator(); }
  double value() const { return boost::rational_cast<double>(r_); }
  const boost::rational<std::int64_t>& rational() const { return r_; }

  HaChar doubled() const { return HaChar(r_ * std::int64_t{2}); }
  HaChar halved() const { return HaChar(r_ / std::int64_t{2}); }

  friend HaChar operator+(const HaChar& a, const HaChar& b) { return HaChar(a.r_ + b.r_); }
  friend HaChar operator-(const HaChar& a, const HaChar& b) { return HaChar(a.r_ - b.r_); }
  friend HaChar operator-(const HaChar& a) { return HaChar(-a.r_); }
  friend bool operator==(const HaChar& a, const HaChar& b) { return a.r_ == b.r_; }
  friend std::strong_ordering operator<=>(const HaChar& a, const HaChar& b) {
    if (a.r_ < b.r_) return std::strong_ordering::less;
    if (b.r_ < a.r_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    return den() == 1 ? std::to_string(num()) : std::to_string(num()) + "/" + std::to_string(den());
  }

  /// "m" or "m/q".
  static HaChar parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
      if (slash == std::string::npos) return HaChar(std::stoll(text));
      const auto den = std::stoll(text.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator");
      return HaChar(std::stoll(text.substr(0, slash)), den);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("cannot parse rational '" + text + "'");
    }
  }

 private:
  boost::rational<std::int64_t> r_{0};
};

/// Truncation a_0, ..., a_{d-1} of the sequence defining the solenoid.
class SolenoidBase {
 public:
  explicit SolenoidBase(std::vector<std::int64_t> a) : a_(std::move(a)) {
    product_ = 1;
    for (const auto aj : a_) {
      if (aj < 2) throw std::invalid_argument("solenoid entries must be >= 2");
      if (product_ > std::numeric_limits<std::int64_t>::max() / aj) {
        throw std::invalid_argument("product a_0...a_{d-1} overflows");
      }
      product_ *= aj;
    }
  }

  const std::vector<std::int64_t>& a() const noexcept { return a_; }
  std::size_t depth() const noexcept { return a_.size(); }
  std::int64_t product() const noexcept { return product_; }
  bool all_odd() const {
    return std::all_of(a_.begin(), a_.end(), [](std::int64_t v) { return v % 2 != 0; });
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t j = 0; j < a_.size(); ++j) s += (j ? "," : "") + std::to_string(a_[j]);
    return s + ")";
  }

 private:
  std::vector<std::int64_t> a_;
  std::int64_t product_ = 1;
};

/// r in H_a iff its reduced denominator divides a_0 ... a_{d-1}.
inline bool ha_contains(const SolenoidBase& base, const HaChar& r) {
  return base.product() % r.den() == 0;
}

/// Finite slice of H_a: reduced m/q with q | a_0...a_{d-1} and |m| <= M.
struct Window {
  SolenoidBase base;
  std::int64_t max_numerator = 64;

  bool contains(const HaChar& y) const {
    return ha_contains(base, y) && std::abs(y.num()) <= max_numerator;
  }

  /// Window points in increasing order.
  std::vector<HaChar> points() const {
    std::vector<HaChar> out;
    const auto q_max = base.product();
    for (std::int64_t q = 1; q <= q_max; ++q) {
      if (q_max % q != 0) continue;
      for (std::int64_t m = -max_numerator; m <= max_numerator; ++m) {
        if (std::gcd(m, q) == 1 || (m == 0 && q == 1)) out.emplace_back(m, q);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

/// Cyclic subgroup g Z of H_a.
struct CyclicSubgroup {
  HaChar generator;

  bool contains(const HaChar& y) const {
    if (generator.num() == 0) return y.num() == 0;
    // y / g = (y.num * g.den) / (y.den * g.num)
    const auto ratio = boost::rational<std::int64_t>(y.num(), y.den()) /
                       boost::rational<std::int64_t>(generator.num(), generator.den());
    return ratio.denominator() == 1;
  }

  /// 2y in B implies y in B, for y in H_a. For B = gZ this fails exactly when
  /// g/2 lies in H_a.
  bool halving_closed(const SolenoidBase& base) const {
    return generator.num() == 0 || !ha_contains(base, generator.halved());
  }

  std::string to_string() const { return "(" + generator.to_string() + ")Z"; }
};

/// 2 / (e^{sigma y} + e^{-sigma y}) on B (or everywhere when B is absent);
/// 0 off B. B should be halving-closed for the result to solve the mode-A
/// equation: see CyclicSubgroup::halving_closed.
inline double sech_cf_on_ha(double sigma, const HaChar& y, const SolenoidBase& base,
                            const std::optional<CyclicSubgroup>& b = std::nullopt) {
  if (!ha_contains(base, y)) throw std::domain_error(y.to_string() + " is not in H_a");
  if (b && !b->contains(y)) return 0.0;
  return 1.0 / std::cosh(sigma * y.value());
}

inline double sech_mode_a_residual(double sigma, const HaChar& y, const SolenoidBase& base,
                                   const std::optional<CyclicSubgroup>& b = std::nullopt) {
  const double f = sech_cf_on_ha(sigma, y, base, b);
  const double f2 = sech_cf_on_ha(sigma, y.doubled(), base, b);
  return std::abs(f2 - f * f * (f2 + 1.0) / 2.0);
}

/// L_z = {2^k z} restricted to a window, for z with odd numerator.
struct Orbit {
  HaChar representative;
  std::vector<HaChar> points;
};

inline std::vector<Orbit> odd_orbit_decompose(const Window& window) {
  if (!window.base.all_odd()) {
    throw std::invalid_argument("orbit decomposition needs every a_j odd");
  }
  std::vector<Orbit> orbits;
  for (const auto& z : window.points()) {
    if (z.num() % 2 == 0) continue;  // includes 0
    Orbit o{z, {}};
    for (HaChar y = z; window.contains(y); y = y.doubled()) o.points.push_back(y);
    orbits.push_back(std::move(o));
  }
  return orbits;
}

/// y = 2^k z with z of odd numerator; requires y != 0 and odd denominator.
inline std::pair<HaChar, int> orbit_position(const HaChar& y) {
  if (y.num() == 0) throw std::invalid_argument("0 lies in no orbit");
  std::int64_t m = y.num();
  int k = 0;
  while (m % 2 == 0) {
    m /= 2;
    ++k;
  }
  return {HaChar(m, y.den()), k};
}

/// Orbit-indexed function on H_a: f(0) = 1, f(z) = c(z) for odd-numerator z
/// and f(2^{k+1} z) = F(f(2^k z)) with F(t) = t^2 / (2 - t^2). Unlisted
/// representatives take c = 0.
class CounterexampleCF {
 public:
  CounterexampleCF(Window window, std::map<HaChar, Rational> c)
      : window_(std::move(window)), c_(std::move(c)) {
    if (!window_.base.all_odd()) {
      throw std::invalid_argument("counterexample needs every a_j odd");
    }
    std::map<HaChar, Rational> sym = c_;
    for (const auto& [z, v] : c_) {
      if (!ha_contains(window_.base, z) || z.num() % 2 == 0) {
        throw std::invalid_argument("coefficient key " + z.to_string() +
                                    " is not an odd/odd element of H_a");
      }
      if (!(v > 0 && v < 1)) throw std::invalid_argument("coefficients must lie in (0, 1)");
      const auto it = c_.find(-z);
      if (it != c_.end() && it->second != v) {
        throw std::invalid_argument("coefficients must satisfy c(-z) = c(z)");
      }
      sym[-z] = v;
    }
    c_ = std::move(sym);
    Rational total = 0;
    for (const auto& [z, v] : c_) total += v;
    if (!(total < make_rational(1, 2))) {
      throw std::invalid_argument("coefficients must sum to less than 1/2, got " + to_string(total));
    }
    for (const auto& y : window_.points()) {
      const auto v = value(y);
      exact_.emplace(y, v);
      approx_.emplace_back(y, to_double(v));
    }
  }

  /// c(+-1) = 1/8, c(+-1/3) = 1/16, c(+-5/3) = 1/32; total 7/16.
  static CounterexampleCF with_default_coefficients(const SolenoidBase& base,
                                                    std::int64_t max_numerator = 64) {
    return CounterexampleCF(Window{base, max_numerator},
                            {{HaChar(1), make_rational(1, 8)},
                             {HaChar(1, 3), make_rational(1, 16)},
                             {HaChar(5, 3), make_rational(1, 32)}});
  }

  const Window& window() const noexcept { return window_; }
  const std::map<HaChar, Rational>& coefficients() const noexcept { return c_; }

  Rational coefficient(const HaChar& z) const {
    const auto it = c_.find(z);
    return it == c_.end() ? Rational(0) : it->second;
  }

  Rational coefficient_sum() const {
    Rational total = 0;
    for (const auto& [z, v] : c_) total += v;
    return total;
  }

  /// Exact value anywhere in H_a.
  Rational value(const HaChar& y) const {
    if (!ha_contains(window_.base, y)) throw std::domain_error(y.to_string() + " is not in H_a");
    if (y.num() == 0) return 1;
    if (const auto it = exact_.find(y); it != exact_.end()) return it->second;
    const auto [z, k] = orbit_position(y);
    Rational t = coefficient(z);
    for (int j = 0; j < k; ++j) t = forward_value(t);
    return t;
  }

  /// (y, f(y)) over the window in increasing y.
  const std::vector<std::pair<HaChar, double>>& window_values() const noexcept { return approx_; }

 private:
  Window window_;
  std::map<HaChar, Rational> c_;
  std::map<HaChar, Rational> exact_;
  std::vector<std::pair<HaChar, double>> approx_;
};

/// f(y) for a window point.
inline Rational counterexample_cf(const CounterexampleCF& cf, const HaChar& y) {
  if (!cf.window().contains(y)) throw std::domain_error(y.to_string() + " is outside the window");
  return cf.value(y);
}

/// Window points where f(2y) = f(y)^2 (f(2y) + 1) / 2 fails as an identity
/// of rationals; f(2y) is evaluated even when 2y leaves the window.
inline std::vector<HaChar> counterexample_mode_a_failures(const CounterexampleCF& cf) {
  std::vector<HaChar> failing;
  for (const auto& y : cf.window().points()) {
    if (equation_residual(EquationMode::A, cf.value(y), cf.value(y.doubled())) != 0) {
      failing.push_back(y);
    }
  }
  return failing;
}

/// Exact upper bound on sum_{y != 0} f(y): window sum plus, per orbit, the
/// tail v + v^2 + v^4 + ... <= v / (1 - v) past the window, where v is the
/// first value outside the window (F(t) <= t^2 on [0, 1]).
struct SumBound {
  Rational window_sum;
  Rational tail_bound;
  Rational orbit_bound;  ///< sum_z 2 c(z)
  bool orbits_below_twice_c = true;

  Rational total() const { return window_sum + tail_bound; }
  bool below_one() const { return total() < 1; }
};

inline SumBound counterexample_sum_bound(const CounterexampleCF& cf) {
  SumBound b;
  for (const auto& [y, v] : cf.window_values()) {
    if (y.num() != 0) b.window_sum += cf.value(y);
  }
  const auto& window = cf.window();
  for (const auto& [z, c] : cf.coefficients()) {
    b.orbit_bound += 2 * c;
    Rational orbit_sum = 0;
    HaChar y = z;
    Rational t = c;
    while (window.contains(y)) {
      orbit_sum += t;
      y = y.doubled();
      t = forward_value(t);
    }
    const Rational tail = t / (1 - t);
    b.tail_bound += tail;
    if (!(orbit_sum + tail < 2 * c)) b.orbits_below_twice_c = false;
  }
  return b;
}

/// True when every orbit point outside the window has f below threshold.
inline bool window_covers(const CounterexampleCF& cf, double threshold = 1e-12) {
  for (const auto& [z, c] : cf.coefficients()) {
    HaChar y = z;
    while (cf.window().contains(y)) y = y.doubled();
    if (to_double(cf.value(y)) >= threshold) return false;
  }
  return true;
}

/// rho(s) = 1 + sum_{y != 0} f(y) cos(2 pi y s): the density along the dense
/// one-parameter image of R in the solenoid.
inline double rho_along_R(const CounterexampleCF& cf, double s) {
  if (!window_covers(cf)) {
    throw std::invalid_argument("window misses orbit points with f >= 1e-12");
  }
  double rho = 1.0;
  for (const auto& [y, v] : cf.window_values()) {
    if (y.num() != 0 && v != 0.0) rho += v * std::cos(2.0 * std::numbers::pi * y.value() * s);
  }
  return rho;
}

/// Spread of arcsech(f(y)) / |y| over window points with 0 < f(y) < 1. A
/// function of the form sech(sigma y) has spread 0.
struct SechRatioWitness {
  HaChar low_point;
  HaChar high_point;
  double low = 0.0;
  double high = 0.0;
  double gap() const { return high - low; }
};

inline std::optional<SechRatioWitness> sech_ratio_witness(
    const std::vector<std::pair<HaChar, double>>& values) {
  std::optional<SechRatioWitness> w;
  for (const auto& [y, f] : values) {
    if (y.num() == 0 || !(f > 0.0 && f < 1.0)) continue;
    const double ratio = std::acosh(1.0 / f) / std::abs(y.value());
    if (!w) {
      w = SechRatioWitness{y, y, ratio, ratio};
      continue;
    }
    if (ratio < w->low) {
      w->low = ratio;
      w->low_point = y;
    }
    if (ratio > w->high) {
      w->high = ratio;
      w->high_point = y;
    }
  }
  return w;
}

/// Minimum eigenvalue of [f(y_i - y_j)].
inline double gram_min_eigenvalue(const std::function<double(const HaChar&)>& f,
                                  const std::vector<HaChar>& ys) {
  const auto n = static_cast<Eigen::Index>(ys.size());
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = f(ys[i] - ys[j]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

struct DoublingAutomorphism {
  bool value = false;
  std::string caveat;
};

/// Whether the truncation contains an even entry. Doubling is an
/// automorphism of the solenoid iff infinitely many a_j are even, which a
/// finite truncation cannot decide; the record says so.
inline DoublingAutomorphism doubling_is_automorphism(const SolenoidBase& base) {
  const bool even = !base.all_odd();
  return DoublingAutomorphism{
      even, std::string("truncation ") + base.to_string() +
                (even ? " contains an even entry" : " has only odd entries") +
                "; the true condition is that infinitely many a_j are even, which concerns the "
                "untruncated tail"};
}

}  // namespace lcaforms
