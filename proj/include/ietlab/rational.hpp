#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ietlab {

// Exact arbitrary-precision rational. Thin value wrapper around GMP's
// mpq_class so the rest of the code owns formatting ("p/q" strings,
// exact decimal parsing) and never spells gmpxx types.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors int literals
  Rational(long num, long den);

  static Rational from_u64(std::uint64_t n);
  // num / 2^64, canonical. Used for exact uniform sampling.
  static Rational dyadic64(std::uint64_t num);
  // Exact values from "p/q", "p", or decimal strings like "0.35" / "-1.5".
  static std::optional<Rational> parse(std::string_view text);

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
  friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
  friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
  friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) == 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) < 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  int sign() const { return mpq_sgn(v_.get_mpq_t()); }
  double to_double() const { return v_.get_d(); }
  // Fractional part in [0, 1): x - floor(x).
  Rational mod1() const;
  // Smallest integer >= *this, as a long (throws if out of range).
  long ceil_long() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  // "p/q" (or "p" when q == 1); exact round trip through parse().
  std::string str() const;

 private:
  explicit Rational(mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.abs(); }

}  // namespace ietlab
