#pragma once

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "ietlab/arith.hpp"
#include "ietlab/errors.hpp"
#include "ietlab/permutation.hpp"

namespace ietlab {

// Interval exchange transformation on [0, |lambda|), as an exact piecewise
// translation. Intervals are half-open: I_k = [beta_{k-1}, beta_k).
// The scalar S is either Rational (exact) or double (tie tolerance 1e-12).
template <class S>
class Iet {
 public:
  // Validating constructor: positive lengths and strict irreducibility
  // (both conditions). Rauzy induction can leave strict irreducibility,
  // so internal code uses unchecked() instead.
  Iet(std::vector<S> lengths, Permutation perm)
      : Iet(std::move(lengths), std::move(perm), true) {}

  static Iet unchecked(std::vector<S> lengths, Permutation perm) {
    return Iet(std::move(lengths), std::move(perm), false);
  }

  int n() const { return perm_.n(); }
  const std::vector<S>& lengths() const { return lengths_; }
  const Permutation& perm() const { return perm_; }
  const S& total() const { return beta_.back(); }
  // beta_0 = 0 < beta_1 < ... < beta_n = |lambda|.
  const std::vector<S>& breakpoints() const { return beta_; }
  // gamma_j = boundaries of the rearranged intervals, in image order.
  const std::vector<S>& image_breakpoints() const { return gamma_; }
  // Interval occupying image position j (1-based): sigma(j) = pi^{-1}(j).
  int interval_at_image_position(int j) const { return img_order_[static_cast<std::size_t>(j - 1)]; }

  // 1-based k with x in I_k.
  int interval_index(const S& x) const {
    check_domain(x);
    auto it = std::upper_bound(beta_.begin() + 1, beta_.end(), x);
    return static_cast<int>(it - beta_.begin());
  }

  S apply(const S& x) const {
    int k = 0;
    return apply_indexed(x, k);
  }

  // Same as apply(), also reporting which interval x fell in.
  S apply_indexed(const S& x, int& k) const {
    k = interval_index(x);
    return x - beta_[static_cast<std::size_t>(k - 1)] + dest_[static_cast<std::size_t>(k - 1)];
  }

  S apply_inverse(const S& y) const {
    check_domain(y);
    auto it = std::upper_bound(gamma_.begin() + 1, gamma_.end(), y);
    int j = static_cast<int>(it - gamma_.begin());
    int k = interval_at_image_position(j);
    return y - gamma_[static_cast<std::size_t>(j - 1)] + beta_[static_cast<std::size_t>(k - 1)];
  }

  // Rescale lengths so |lambda| = 1.
  Iet normalized() const {
    std::vector<S> scaled = lengths_;
    for (S& v : scaled) v = v / total();
    return Iet::unchecked(std::move(scaled), perm_);
  }

  friend bool operator==(const Iet& a, const Iet& b) {
    return a.lengths_ == b.lengths_ && a.perm_ == b.perm_;
  }

 private:
  Iet(std::vector<S> lengths, Permutation perm, bool strict)
      : lengths_(std::move(lengths)), perm_(std::move(perm)) {
    const int n = perm_.n();
    if (static_cast<int>(lengths_.size()) != n)
      throw ValidationError("length vector and permutation disagree on n");
    if (n < 2) throw ValidationError("an IET needs n >= 2 intervals");
    for (const S& l : lengths_)
      if (!(l > S(0))) throw ValidationError("lengths must be strictly positive");
    if (strict) {
      auto rep = check_irreducible(perm_);
      if (!rep.ok()) throw ValidationError("permutation not irreducible: " + rep.describe());
    }
    beta_.resize(static_cast<std::size_t>(n) + 1);
    beta_[0] = S(0);
    for (int k = 1; k <= n; ++k)
      beta_[static_cast<std::size_t>(k)] = beta_[static_cast<std::size_t>(k - 1)] + lengths_[static_cast<std::size_t>(k - 1)];

    img_order_.resize(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k)
      img_order_[static_cast<std::size_t>(perm_.image(k) - 1)] = k;

    gamma_.resize(static_cast<std::size_t>(n) + 1);
    gamma_[0] = S(0);
    for (int j = 1; j <= n; ++j)
      gamma_[static_cast<std::size_t>(j)] =
          gamma_[static_cast<std::size_t>(j - 1)] + lengths_[static_cast<std::size_t>(img_order_[static_cast<std::size_t>(j - 1)] - 1)];

    dest_.resize(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k)
      dest_[static_cast<std::size_t>(k - 1)] = gamma_[static_cast<std::size_t>(perm_.image(k) - 1)];
  }

  void check_domain(const S& x) const {
    if (x < S(0) || !(x < total()))
      throw DomainError("point outside [0, |lambda|)");
  }

  std::vector<S> lengths_;
  Permutation perm_;
  std::vector<S> beta_;       // domain breakpoints, size n+1
  std::vector<S> gamma_;      // image breakpoints, size n+1
  std::vector<int> img_order_;  // sigma(j) = pi^{-1}(j)
  std::vector<S> dest_;       // start of interval k's image slot
};

template <class S>
struct ReturnMap {
  Iet<S> induced;
  std::vector<long> return_times;  // per induced interval, domain order
};

// First return map of iet on [0, cutoff), by direct orbit iteration of
// subinterval pieces. This is the independent oracle the closed-form
// Rauzy step is checked against. For a non-Rauzy cutoff the induced map
// simply has however many intervals arise.
template <class S>
ReturnMap<S> first_return_map(const Iet<S>& iet, const S& cutoff, long max_iters = 1000000) {
  using Traits = ArithTraits<S>;
  if (!(cutoff > S(0)) || cutoff > iet.total())
    throw ValidationError("first_return_map: cutoff must lie in (0, |lambda|]");

  struct Piece {
    S start;  // position within [0, cutoff), fixed
    S len;
    S cur;  // current left endpoint of the piece's image in [0, |lambda|)
    long steps;
  };

  const auto& beta = iet.breakpoints();
  const int n = iet.n();
  std::vector<Piece> pending;
  std::vector<Piece> done;
  pending.push_back({S(0), cutoff, S(0), 0});

  auto guard_sliver = [&](const S& width) {
    if constexpr (!Traits::exact) {
      if (width < ArithTraits<double>::tie_rel_tol * Traits::to_double(iet.total()))
        throw DegeneracyError("first_return_map: split produces a sliver below tie tolerance");
    }
  };

  while (!pending.empty()) {
    Piece p = pending.back();
    pending.pop_back();

    if (p.steps > 0 && !(p.cur + p.len > cutoff)) {
      done.push_back(p);
      continue;
    }

    // Split at breakpoints strictly inside the piece, so one application
    // of T is a single translation on it.
    bool split = false;
    for (int i = 1; i <= n - 1; ++i) {
      const S& b = beta[static_cast<std::size_t>(i)];
      if (b > p.cur && b < p.cur + p.len) {
        S off = b - p.cur;
        guard_sliver(off);
        guard_sliver(p.len - off);
        pending.push_back({p.start, off, p.cur, p.steps});
        pending.push_back({p.start + off, p.len - off, b, p.steps});
        split = true;
        break;
      }
    }
    if (split) continue;

    p.cur = iet.apply(p.cur);
    p.steps += 1;
    if (p.steps > max_iters)
      throw BudgetError("first_return_map: return time exceeds max_iters");

    if (p.cur < cutoff && p.cur + p.len > cutoff) {
      S off = cutoff - p.cur;
      guard_sliver(off);
      guard_sliver(p.len - off);
      pending.push_back({p.start, off, p.cur, p.steps});
      pending.push_back({p.start + off, p.len - off, cutoff, p.steps});
    } else {
      pending.push_back(p);
    }
  }

  std::sort(done.begin(), done.end(), [](const Piece& a, const Piece& b) { return a.start < b.start; });

  const int m = static_cast<int>(done.size());
  std::vector<S> lengths;
  std::vector<long> times;
  lengths.reserve(static_cast<std::size_t>(m));
  times.reserve(static_cast<std::size_t>(m));
  for (const Piece& p : done) {
    lengths.push_back(p.len);
    times.push_back(p.steps);
  }

  // Image positions: rank the pieces by where they return.
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return done[static_cast<std::size_t>(a)].cur < done[static_cast<std::size_t>(b)].cur;
  });
  std::vector<int> images(static_cast<std::size_t>(m));
  for (int rank = 0; rank < m; ++rank)
    images[static_cast<std::size_t>(order[static_cast<std::size_t>(rank)])] = rank + 1;

  if constexpr (Traits::exact) {
    // Exact mode sanity: the pieces tile [0, cutoff) on both sides.
    S pos(0);
    for (const Piece& p : done) {
      if (p.start != pos) throw DegeneracyError("first_return_map: domain pieces do not tile");
      pos += p.len;
    }
    if (pos != cutoff) throw DegeneracyError("first_return_map: domain pieces do not tile");
    pos = S(0);
    for (int rank = 0; rank < m; ++rank) {
      const Piece& p = done[static_cast<std::size_t>(order[static_cast<std::size_t>(rank)])];
      if (p.cur != pos) throw DegeneracyError("first_return_map: image pieces do not tile");
      pos += p.len;
    }
  }

  return ReturnMap<S>{Iet<S>::unchecked(std::move(lengths), Permutation(std::move(images))), std::move(times)};
}

}  // namespace ietlab
