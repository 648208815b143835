#include "ietlab/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "ietlab/errors.hpp"

namespace ietlab {

Rational::Rational(long num, long den) : v_(num, den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_.canonicalize();
}

Rational Rational::from_u64(std::uint64_t n) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
  return Rational(mpq_class(z));
}

Rational Rational::dyadic64(std::uint64_t num) {
  mpq_class q(Rational::from_u64(num).v_);
  mpq_class d;
  mpq_div_2exp(d.get_mpq_t(), q.get_mpq_t(), 64);
  mpq_canonicalize(d.get_mpq_t());
  return Rational(d);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.sign() == 0) throw DomainError("rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::mod1() const {
  mpz_class num = v_.get_num();
  mpz_class den = v_.get_den();
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  mpq_class out(r, den);
  out.canonicalize();
  return Rational(out);
}

long Rational::ceil_long() const {
  mpz_class num = v_.get_num();
  mpz_class den = v_.get_den();
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (!c.fits_slong_p()) throw DomainError("rational ceiling exceeds long range");
  return c.get_si();
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

namespace {

bool parse_integer(std::string_view s, mpz_class& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  out = mpz_class(std::string(s), 10);
  return true;
}

}  // namespace

std::optional<Rational> Rational::parse(std::string_view text) {
  // Trim surrounding whitespace.
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num, den;
    if (!parse_integer(text.substr(0, slash), num)) return std::nullopt;
    if (!parse_integer(text.substr(slash + 1), den)) return std::nullopt;
    if (den == 0) return std::nullopt;
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(q);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto head = text.substr(0, dot);
    auto tail = text.substr(dot + 1);
    bool negative = !head.empty() && head[0] == '-';
    mpz_class whole = 0;
    if (!head.empty() && head != "-" && head != "+") {
      if (!parse_integer(head, whole)) return std::nullopt;
    }
    if (tail.empty()) return Rational(mpq_class(whole));
    for (char c : tail)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    mpz_class frac(std::string(tail), 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, tail.size());
    mpq_class q(frac, scale);
    q.canonicalize();
    mpq_class result(whole);
    if (negative)
      result -= q;
    else
      result += q;
    return Rational(result);
  }
  mpz_class num;
  if (!parse_integer(text, num)) return std::nullopt;
  return Rational(mpq_class(num));
}

}  // namespace ietlab
