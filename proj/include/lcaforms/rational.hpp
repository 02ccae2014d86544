#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace lcaforms {

/// Arbitrary precision rational used for every measure-side computation.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) { return r.str(); }

inline Rational make_rational(long long num, long long den = 1) {
  return Rational(num) / Rational(den);
}

}  // namespace lcaforms
