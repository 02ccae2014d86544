#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcaforms/fe_solver.hpp"
#include "lcaforms/linear_forms.hpp"
#include "lcaforms/rng.hpp"

namespace lcaforms {

/// Hyperbolic secant law with characteristic function sech(sigma s).
/// sigma = 0 is the point mass at 0.
class SechLaw {
 public:
  explicit SechLaw(double sigma) : sigma_(sigma) {
    if (!(sigma >= 0.0)) throw std::domain_error("sech scale must be >= 0");
  }

  double sigma() const noexcept { return sigma_; }
  double cf(double s) const { return 1.0 / std::cosh(sigma_ * s); }

  double cdf(double x) const {
    if (sigma_ == 0.0) return x < 0.0 ? 0.0 : 1.0;
    return 2.0 / std::numbers::pi * std::atan(std::exp(std::numbers::pi * x / (2.0 * sigma_)));
  }

  /// Inverse transform: (2 sigma / pi) ln tan(pi U / 2).
  double sample(Rng& rng) const {
    if (sigma_ == 0.0) return 0.0;
    const double u = rng.uniform();
    return 2.0 * sigma_ / std::numbers::pi * std::log(std::tan(std::numbers::pi * u / 2.0));
  }

 private:
  double sigma_;
};

/// (E_a + E_{-a}) / 2, with characteristic function cos(a s).
class TwoPointLaw {
 public:
  explicit TwoPointLaw(double a) : a_(a) {}
  double a() const noexcept { return a_; }
  double cf(double s) const { return std::cos(a_ * s); }
  double sample(Rng& rng) const { return rng.coin() ? a_ : -a_; }

 private:
  double a_;
};

/// Centered normal law; used as a negative control.
class GaussianLaw {
 public:
  explicit GaussianLaw(double sd = 1.0) : sd_(sd) {
    if (!(sd > 0.0)) throw std::domain_error("standard deviation must be > 0");
  }
  double cf(double s) const { return std::exp(-0.5 * sd_ * sd_ * s * s); }
  double sample(Rng& rng) const { return std::normal_distribution<double>(0.0, sd_)(rng); }

 private:
  double sd_;
};

using Sampler = std::function<double(Rng&)>;

inline std::vector<double> sech_sample(const SechLaw& law, Rng& rng, std::size_t n) {
  if (n < 1) throw std::invalid_argument("sample count must be >= 1");
  std::vector<double> out(n);
  for (auto& x : out) x = law.sample(rng);
  return out;
}

/// Mean of cos(s X): the empirical characteristic function of a symmetric law.
inline double empirical_cf(const std::vector<double>& xs, double s) {
  double acc = 0.0;
  for (const double x : xs) acc += std::cos(s * x);
  return acc / static_cast<double>(xs.size());
}

// Samplers of the linear forms built from a sampler of xi. alpha is a fair
// coin drawn from the same stream.

/// 2 xi_1.
inline Sampler double_form(Sampler xi) {
  return [xi = std::move(xi)](Rng& rng) { return 2.0 * xi(rng); };
}

/// xi_1 + xi_2 + 2 alpha xi_3.
inline Sampler klebanov3_form(Sampler xi) {
  return [xi = std::move(xi)](Rng& rng) {
    const double x1 = xi(rng);
    const double x2 = xi(rng);
    const double x3 = xi(rng);
    return x1 + x2 + (rng.coin() ? 2.0 * x3 : 0.0);
  };
}

/// 2 alpha xi_1.
inline Sampler double_alpha_form(Sampler xi) {
  return [xi = std::move(xi)](Rng& rng) {
    const double x1 = xi(rng);
    return rng.coin() ? 2.0 * x1 : 0.0;
  };
}

/// xi_1 + xi_2.
inline Sampler sum2_form(Sampler xi) {
  return [xi = std::move(xi)](Rng& rng) { return xi(rng) + xi(rng); };
}

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

/// One-sample Kolmogorov-Smirnov statistic against a continuous CDF.
inline double ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf) {
  if (xs.empty()) throw std::invalid_argument("empty sample");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// Asymptotic 5% critical value for two samples of size n.
inline double ks_threshold_5pct(std::size_t n) {
  return 1.36 * std::sqrt(2.0 / static_cast<double>(n));
}

/// Asymptotic 1% critical value for one sample of size n.
inline double ks_one_sample_threshold_1pct(std::size_t n) {
  return 1.628 / std::sqrt(static_cast<double>(n));
}

struct IdentityTest {
  double statistic = 0.0;
  double threshold = 0.0;
  bool reject = false;
};

/// Draws n values from each sampler, each with its own generator, and
/// compares them with the two-sample KS test at the 5% level.
inline IdentityTest mc_identity_test(const Sampler& left, const Sampler& right, Rng left_rng,
                                     Rng right_rng, std::size_t n) {
  if (n < 1000) throw std::invalid_argument("identity test needs n >= 1000");
  std::vector<double> a(n);
  std::vector<double> b(n);
  for (auto& x : a) x = left(left_rng);
  for (auto& x : b) x = right(right_rng);
  IdentityTest t;
  t.statistic = ks_two_sample(std::move(a), std::move(b));
  t.threshold = ks_threshold_5pct(n);
  t.reject = t.statistic > t.threshold;
  return t;
}

struct DescentResult {
  double max_deviation = 0.0;         ///< max_n |t_n - g(s0 / 2^n)|
  std::vector<double> deviations;     ///< per n = 0..N
  double equation_residual = 0.0;     ///< max_n |t_n - f(s0 / 2^n)|
  bool precondition_ok = false;       ///< f(s0) = g(s0) and f follows the descent
  std::string detail;
};

/// Descends from s0 through s0 / 2^n using the positive preimage of the mode
/// A (or mode B) forward map, starting from t_0 = f(s0), and compares with g.
inline DescentResult linnik_halving_check(const std::function<double(double)>& f,
                                          const std::function<double(double)>& g, double s0,
                                          std::size_t n_steps, EquationMode mode) {
  DescentResult r;
  double t = f(s0);
  const bool matched = std::abs(t - g(s0)) <= 1e-12;
  double s = s0;
  for (std::size_t n = 0; n <= n_steps; ++n) {
    if (n > 0) {
      s /= 2.0;
      if (mode == EquationMode::A) {
        if (t < 0.0 || t > 1.0) {
          r.detail = "descent left [0, 1] at n=" + std::to_string(n);
          return r;
        }
        t = halve_value(t);
      } else {
        t = halve_value_b(std::clamp(t, -1.0, 1.0));
      }
    }
    const double dev = std::abs(t - g(s));
    r.deviations.push_back(dev);
    r.max_deviation = std::max(r.max_deviation, dev);
    r.equation_residual = std::max(r.equation_residual, std::abs(t - f(s)));
  }
  r.precondition_ok = matched && r.equation_residual <= 1e-9;
  if (!matched) {
    r.detail = "f(s0) != g(s0)";
  } else if (!r.precondition_ok) {
    r.detail = "f does not follow the dyadic descent";
  }
  return r;
}

}  // namespace lcaforms
