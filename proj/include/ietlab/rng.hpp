#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "ietlab/rational.hpp"

namespace ietlab {

// Named substream of a single top-level seed. Streams are derived by
// hashing (seed, name, index), so adding a new consumer never perturbs
// existing ones. All floating-point sampling is built from raw 64-bit
// draws to keep outputs identical across standard libraries.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view name, std::uint64_t index = 0);

  std::uint64_t u64();
  // Uniform in [0, 1), 53-bit resolution.
  double unit();
  // Exact uniform dyadic rational k/2^64.
  Rational unit_rational();
  // Standard normal via Box-Muller.
  double gaussian();
  // Uniform in {0, ..., n-1}, rejection-sampled.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// SplitMix64 step; also used for seed derivation.
std::uint64_t splitmix64(std::uint64_t& state);

// Uniform scalar in [0,1) matching the arithmetic mode.
template <class S>
S sample_unit(RngStream& rng);
template <>
inline Rational sample_unit<Rational>(RngStream& rng) { return rng.unit_rational(); }
template <>
inline double sample_unit<double>(RngStream& rng) { return rng.unit(); }

}  // namespace ietlab
