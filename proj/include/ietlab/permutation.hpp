#pragma once

#include <string>
#include <vector>

#include "ietlab/errors.hpp"

namespace ietlab {

// Permutation of {1..n}, stored as the image sequence pi(1..n).
// Indices are 1-based throughout to match the interval labels.
class Permutation {
 public:
  explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
    const int n = static_cast<int>(img_.size());
    if (n < 1) throw ValidationError("permutation must have n >= 1 entries");
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (int v : img_) {
      if (v < 1 || v > n) throw ValidationError("permutation image out of range 1..n");
      if (seen[static_cast<std::size_t>(v)]) throw ValidationError("permutation images repeat");
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }

  int n() const { return static_cast<int>(img_.size()); }
  // pi(k), 1 <= k <= n.
  int image(int k) const { return img_[static_cast<std::size_t>(k - 1)]; }
  // pi^{-1}(v), 1 <= v <= n.
  int preimage(int v) const {
    for (int k = 1; k <= n(); ++k)
      if (image(k) == v) return k;
    throw DomainError("preimage: value out of range");
  }
  const std::vector<int>& images() const { return img_; }

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.img_ == b.img_; }
  friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }

 private:
  std::vector<int> img_;
};

// Irreducibility in the strict sense used here: condition (1) forbids
// invariant prefix blocks pi{1..k} = {1..k}; condition (2) forbids
// consecutive intervals that move together, pi(k+1) = pi(k) + 1. Both are
// required for all 1 <= k < n.
struct IrreducibilityReport {
  bool condition1 = true;  // no invariant prefix block
  bool condition2 = true;  // no pair of consecutive intervals moving as one
  int failed_k1 = 0;       // witness k for a condition (1) failure
  int failed_k2 = 0;       // witness k for a condition (2) failure
  bool ok() const { return condition1 && condition2; }
  std::string describe() const;
};

inline IrreducibilityReport check_irreducible(const Permutation& perm) {
  IrreducibilityReport rep;
  const int n = perm.n();
  int prefix_max = 0;
  for (int k = 1; k < n; ++k) {
    prefix_max = std::max(prefix_max, perm.image(k));
    if (rep.condition1 && prefix_max == k) {
      rep.condition1 = false;
      rep.failed_k1 = k;
    }
    if (rep.condition2 && perm.image(k + 1) == perm.image(k) + 1) {
      rep.condition2 = false;
      rep.failed_k2 = k;
    }
  }
  return rep;
}

inline std::string IrreducibilityReport::describe() const {
  if (ok()) return "irreducible";
  std::string msg;
  if (!condition1)
    msg += "condition (1) fails at k=" + std::to_string(failed_k1) +
           ": pi{1..k} = {1..k}";
  if (!condition2) {
    if (!msg.empty()) msg += "; ";
    msg += "condition (2) fails at k=" + std::to_string(failed_k2) +
           ": pi(k+1) = pi(k)+1";
  }
  return msg;
}

inline bool validate_irreducible(const Permutation& perm) {
  return check_irreducible(perm).ok();
}

}  // namespace ietlab
