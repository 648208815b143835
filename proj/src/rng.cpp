#include "ietlab/rng.hpp"

#include <cmath>
#include <numbers>

namespace ietlab {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::string_view name, std::uint64_t index) {
  std::uint64_t state = seed;
  std::uint64_t a = splitmix64(state);
  state ^= fnv1a(name);
  std::uint64_t b = splitmix64(state);
  state ^= index * 0x9e3779b97f4a7c15ULL + 1;
  std::uint64_t c = splitmix64(state);
  eng_.seed(a ^ (b * 3) ^ (c * 7));
}

std::uint64_t RngStream::u64() { return eng_(); }

double RngStream::unit() {
  return static_cast<double>(u64() >> 11) * 0x1.0p-53;
}

Rational RngStream::unit_rational() { return Rational::dyadic64(u64()); }

double RngStream::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = unit();
  } while (u1 <= 0.0);
  double u2 = unit();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::uint64_t RngStream::below(std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = u64();
  } while (x >= limit);
  return x % n;
}

}  // namespace ietlab
