#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lcaforms/group_core.hpp"
#include "lcaforms/rational.hpp"

namespace lcaforms {

/// Slack for floating Fourier-side comparisons.
inline constexpr double kFourierTol = 1e-9;

/// Exact probability mass function on a finite abelian group.
class Dist {
 public:
  Dist(FiniteAbelianGroup g, std::vector<Rational> masses)
      : group_(std::move(g)), mass_(std::move(masses)) {
    if (mass_.size() != group_.order()) {
      throw std::invalid_argument("mass vector size does not match group order");
    }
    Rational total = 0;
    for (const auto& m : mass_) {
      if (m < 0) throw std::invalid_argument("negative probability mass");
      total += m;
    }
    if (total != 1) throw std::invalid_argument("masses sum to " + lcaforms::to_string(total) + ", not 1");
  }

  static Dist point(const FiniteAbelianGroup& g, std::size_t x) {
    std::vector<Rational> m(g.order(), Rational(0));
    m.at(x) = 1;
    return Dist(g, std::move(m));
  }
  static Dist point(const FiniteAbelianGroup& g, const GroupElement& x) {
    return point(g, g.index_of(x));
  }

  static Dist uniform(const FiniteAbelianGroup& g) {
    return Dist(g, std::vector<Rational>(g.order(), Rational(1) / Rational(g.order())));
  }

  /// Nonnegative integer weights, normalized exactly.
  static Dist from_weights(const FiniteAbelianGroup& g, const std::vector<std::int64_t>& weights) {
    if (weights.size() != g.order()) throw std::invalid_argument("weight vector size mismatch");
    std::int64_t total = 0;
    for (const auto w : weights) {
      if (w < 0) throw std::invalid_argument("negative weight");
      total += w;
    }
    if (total == 0) throw std::invalid_argument("weights sum to zero");
    std::vector<Rational> m;
    m.reserve(weights.size());
    for (const auto w : weights) m.push_back(make_rational(w, total));
    return Dist(g, std::move(m));
  }

  const FiniteAbelianGroup& group() const noexcept { return group_; }
  const std::vector<Rational>& masses() const noexcept { return mass_; }
  const Rational& mass(std::size_t x) const { return mass_.at(x); }
  const Rational& mass(const GroupElement& x) const { return mass_.at(group_.index_of(x)); }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < mass_.size(); ++i) {
      if (mass_[i] != 0) s.push_back(i);
    }
    return s;
  }

  /// mu(B) = mu(-B).
  bool is_symmetric() const {
    for (std::size_t i = 0; i < mass_.size(); ++i) {
      if (mass_[i] != mass_[group_.neg(i)]) return false;
    }
    return true;
  }

  friend bool operator==(const Dist& a, const Dist& b) {
    return a.group_ == b.group_ && a.mass_ == b.mass_;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (std::size_t i = 0; i < mass_.size(); ++i) {
      if (mass_[i] == 0) continue;
      if (!first) s += ", ";
      first = false;
      s += group_.format_index(i) + ":" + lcaforms::to_string(mass_[i]);
    }
    return s + "}";
  }

 private:
  FiniteAbelianGroup group_;
  std::vector<Rational> mass_;
};

/// Convex combination sum_k w_k mu_k with exact weights summing to 1.
inline Dist mixture(const std::vector<std::pair<Rational, Dist>>& parts) {
  if (parts.empty()) throw std::invalid_argument("empty mixture");
  const auto& g = parts.front().second.group();
  std::vector<Rational> m(g.order(), Rational(0));
  for (const auto& [w, d] : parts) {
    if (!(d.group() == g)) throw std::invalid_argument("mixture components on different groups");
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += w * d.mass(i);
  }
  return Dist(g, std::move(m));
}

inline Dist half_mix(const Dist& a, const Dist& b) {
  const Rational half = make_rational(1, 2);
  return mixture({{half, a}, {half, b}});
}

/// (mu * nu)(x) = sum_z mu(x - z) nu(z).
inline Dist convolve(const Dist& mu, const Dist& nu) {
  if (!(mu.group() == nu.group())) {
    throw std::invalid_argument("convolution of distributions on different groups: " +
                                mu.group().to_string() + " vs " + nu.group().to_string());
  }
  const auto& g = mu.group();
  std::vector<Rational> out(g.order(), Rational(0));
  const auto su = mu.support();
  const auto sv = nu.support();
  for (const auto a : su) {
    for (const auto b : sv) out[g.add(a, b)] += mu.mass(a) * nu.mass(b);
  }
  return Dist(g, std::move(out));
}

/// Law of k * xi when xi has law mu.
inline Dist pushforward_times(const Dist& mu, std::int64_t k) {
  const auto& g = mu.group();
  std::vector<Rational> out(g.order(), Rational(0));
  for (const auto x : mu.support()) out[g.times(k, x)] += mu.mass(x);
  return Dist(g, std::move(out));
}

inline Dist pushforward_double(const Dist& mu) { return pushforward_times(mu, 2); }

/// Law of -xi.
inline Dist reflect(const Dist& mu) { return pushforward_times(mu, -1); }

/// Haar distribution m_K: uniform mass on K.
inline Dist haar_on(const Subgroup& k) {
  const auto& g = k.group();
  std::vector<Rational> m(g.order(), Rational(0));
  const Rational each = Rational(1) / Rational(k.order());
  for (const auto x : k.indices()) m[x] = each;
  return Dist(g, std::move(m));
}

/// A function on the dual group. `exact` is present when every value is a
/// known real rational (indicator functions, sign patterns, solver output).
struct CharFn {
  FiniteAbelianGroup dual;
  std::vector<std::complex<double>> values;
  std::optional<std::vector<Rational>> exact;

  static CharFn from_real(const FiniteAbelianGroup& dual, const std::vector<double>& v) {
    if (v.size() != dual.order()) throw std::invalid_argument("value vector size mismatch");
    CharFn f{dual, {}, std::nullopt};
    f.values.reserve(v.size());
    for (const auto t : v) f.values.emplace_back(t, 0.0);
    return f;
  }

  static CharFn from_exact(const FiniteAbelianGroup& dual, std::vector<Rational> v) {
    if (v.size() != dual.order()) throw std::invalid_argument("value vector size mismatch");
    CharFn f{dual, {}, std::nullopt};
    f.values.reserve(v.size());
    for (const auto& t : v) f.values.emplace_back(to_double(t), 0.0);
    f.exact = std::move(v);
    return f;
  }

  /// Indicator of a subgroup of the dual, exactly.
  static CharFn indicator(const Subgroup& s) {
    std::vector<Rational> v(s.group().order(), Rational(0));
    for (const auto y : s.indices()) v[y] = 1;
    return from_exact(s.group(), std::move(v));
  }

  std::size_t size() const noexcept { return values.size(); }
  const std::complex<double>& operator[](std::size_t y) const { return values.at(y); }

  bool is_real(double tol = kFourierTol) const {
    for (const auto& v : values) {
      if (std::abs(v.imag()) > tol) return false;
    }
    return true;
  }

  /// f(-y) = conj(f(y)).
  bool is_hermitian(double tol = kFourierTol) const {
    for (std::size_t y = 0; y < values.size(); ++y) {
      if (std::abs(values[dual.neg(y)] - std::conj(values[y])) > tol) return false;
    }
    return true;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t y = 0; y < values.size(); ++y) {
      if (y) s += ",";
      if (exact) {
        s += lcaforms::to_string((*exact)[y]);
      } else if (std::abs(values[y].imag()) <= kFourierTol) {
        s += std::to_string(values[y].real());
      } else {
        s += std::to_string(values[y].real()) + (values[y].imag() < 0 ? "-" : "+") +
             std::to_string(std::abs(values[y].imag())) + "i";
      }
    }
    return s + ")";
  }
};

/// Value-by-value equality: exact when both sides carry exact values,
/// otherwise within tol.
inline bool same_values(const CharFn& a, const CharFn& b, double tol = kFourierTol) {
  if (!(a.dual == b.dual)) return false;
  if (a.exact && b.exact) return *a.exact == *b.exact;
  for (std::size_t y = 0; y < a.size(); ++y) {
    if (std::abs(a.values[y] - b.values[y]) > tol) return false;
  }
  return true;
}

inline CharFn pointwise_product(const CharFn& a, const CharFn& b) {
  if (!(a.dual == b.dual)) throw std::invalid_argument("product of functions on different duals");
  CharFn f{a.dual, a.values, std::nullopt};
  for (std::size_t y = 0; y < f.size(); ++y) f.values[y] *= b.values[y];
  if (a.exact && b.exact) {
    std::vector<Rational> e(a.size());
    for (std::size_t y = 0; y < a.size(); ++y) e[y] = (*a.exact)[y] * (*b.exact)[y];
    f.exact = std::move(e);
  }
  return f;
}

/// Characteristic function mu^(y) = sum_x mu(x) (x, y).
inline CharFn fourier(const Dist& mu) {
  const auto& g = mu.group();
  CharFn f{g, std::vector<std::complex<double>>(g.order()), std::nullopt};
  const auto supp = mu.support();
  std::vector<double> w(g.order(), 0.0);
  for (const auto x : supp) w[x] = to_double(mu.mass(x));
  for (std::size_t y = 0; y < g.order(); ++y) {
    std::complex<double> acc{0.0, 0.0};
    for (const auto x : supp) acc += w[x] * g.pair(x, y);
    f.values[y] = acc;
  }
  return f;
}

/// mu(x) = (1/|Y|) sum_y f(y) conj((x, y)).
inline std::vector<std::complex<double>> inverse_fourier(const CharFn& f) {
  const auto& g = f.dual;
  std::vector<std::complex<double>> out(g.order());
  const double scale = 1.0 / static_cast<double>(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t y = 0; y < g.order(); ++y) acc += f.values[y] * std::conj(g.pair(x, y));
    out[x] = acc * scale;
  }
  return out;
}

/// True iff f is the characteristic function of a probability distribution:
/// f(0) = 1 and every inverse-Fourier mass is >= -tol. Throws on
/// non-hermitian input.
inline bool is_positive_definite(const CharFn& f, double tol = kFourierTol) {
  if (!f.is_hermitian(tol)) throw std::invalid_argument("function is not hermitian-symmetric");
  if (std::abs(f.values.at(0) - std::complex<double>(1.0, 0.0)) > tol) return false;
  for (const auto& m : inverse_fourier(f)) {
    if (m.real() < -tol) return false;
  }
  return true;
}

/// E = {y : mu^(y) = 1}, using exact phases: mu^(y) = 1 iff every support
/// point pairs to 1 with y.
inline Subgroup unit_set(const Dist& mu) {
  const auto& g = mu.group();
  const auto supp = mu.support();
  std::vector<std::size_t> e;
  for (std::size_t y = 0; y < g.order(); ++y) {
    bool all = true;
    for (const auto x : supp) {
      if (g.phase_numerator(x, y) != 0) {
        all = false;
        break;
      }
    }
    if (all) e.push_back(y);
  }
  return Subgroup::from_indices(g, std::move(e));
}

}  // namespace lcaforms
