#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "ietlab/rational.hpp"

namespace ietlab {

// The induction machinery is generic over the length scalar: exact
// rationals (default, tie detection is exact equality) or doubles with a
// relative tie tolerance of 1e-12.
template <class S>
struct ArithTraits;

template <>
struct ArithTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";
  static bool tie(const Rational& a, const Rational& b) { return a == b; }
  static double to_double(const Rational& a) { return a.to_double(); }
  static std::string str(const Rational& a) { return a.str(); }
  static long ceil_to_long(const Rational& a) { return a.ceil_long(); }
};

template <>
struct ArithTraits<double> {
  static constexpr bool exact = false;
  static constexpr double tie_rel_tol = 1e-12;
  static constexpr const char* name = "float";
  static bool tie(double a, double b) {
    return std::abs(a - b) <= tie_rel_tol * std::max(std::abs(a), std::abs(b));
  }
  static double to_double(double a) { return a; }
  static std::string str(double a) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), a);
    return std::string(buf, res.ptr);
  }
  static long ceil_to_long(double a) { return static_cast<long>(std::ceil(a)); }
};

}  // namespace ietlab
