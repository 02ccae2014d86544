#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "lcaforms/distributions.hpp"

namespace lcaforms {

// Throughout, alpha is a Bernoulli coefficient taking 0 and 1 with
// probability 1/2 each, independent of the xi_j.

/// Laws of two linear forms and whether they coincide exactly.
struct FormLawPair {
  Dist law_left;
  Dist law_right;
  bool equal = false;
};

inline FormLawPair make_pair_of_laws(Dist left, Dist right) {
  const bool eq = left == right;
  return FormLawPair{std::move(left), std::move(right), eq};
}

/// Law of 2 xi_1.
inline Dist law_double(const Dist& mu) { return pushforward_double(mu); }

/// Law of xi_1 + xi_2 + 2 alpha xi_3.
inline Dist law_klebanov3(const Dist& mu) {
  const auto sum2 = convolve(mu, mu);
  return half_mix(sum2, convolve(sum2, pushforward_double(mu)));
}

/// 2 xi_1 against xi_1 + xi_2 + 2 alpha xi_3.
inline FormLawPair compare_klebanov3(const Dist& mu) {
  return make_pair_of_laws(law_double(mu), law_klebanov3(mu));
}

/// 2 alpha xi_1 against xi_1 + xi_2.
inline FormLawPair law_klebanov2(const Dist& mu) {
  return make_pair_of_laws(half_mix(Dist::point(mu.group(), 0), pushforward_double(mu)),
                           convolve(mu, mu));
}

enum class EquationMode {
  A,  ///< f(2y) = f(y)^2 (f(2y) + 1) / 2
  B,  ///< f(2y) = 2 f(y)^2 - 1
};

inline const char* to_string(EquationMode m) { return m == EquationMode::A ? "A" : "B"; }

inline std::complex<double> equation_residual(EquationMode mode, std::complex<double> f_y,
                                              std::complex<double> f_2y) {
  if (mode == EquationMode::A) return f_2y - f_y * f_y * (f_2y + 1.0) / 2.0;
  return f_2y - (2.0 * f_y * f_y - 1.0);
}

inline double equation_residual(EquationMode mode, double f_y, double f_2y) {
  return equation_residual(mode, std::complex<double>(f_y), std::complex<double>(f_2y)).real();
}

inline Rational equation_residual(EquationMode mode, const Rational& f_y, const Rational& f_2y) {
  if (mode == EquationMode::A) return f_2y - f_y * f_y * (f_2y + 1) / 2;
  return f_2y - (2 * f_y * f_y - 1);
}

/// Dual elements where the equation fails, in canonical order. Exact when f
/// carries exact values, otherwise |residual| <= tol counts as holding.
inline std::vector<std::size_t> eq_predicate(const CharFn& f, EquationMode mode,
                                             double tol = kFourierTol) {
  std::vector<std::size_t> failing;
  const auto& g = f.dual;
  for (std::size_t y = 0; y < g.order(); ++y) {
    const auto y2 = g.twice(y);
    if (f.exact) {
      if (equation_residual(mode, (*f.exact)[y], (*f.exact)[y2]) != 0) failing.push_back(y);
    } else if (std::abs(equation_residual(mode, f.values[y], f.values[y2])) > tol) {
      failing.push_back(y);
    }
  }
  return failing;
}

}  // namespace lcaforms
