#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ietlab/iet.hpp"

namespace ietlab {

enum class RauzyRule { A, B };

inline const char* to_string(RauzyRule r) { return r == RauzyRule::A ? "A" : "B"; }

// Rule A iff lambda^n < lambda^{pi^{-1}(n)}, rule B iff >. A tie (exact,
// or within the float tolerance) is a degeneracy: the induction map is
// only defined on the full-measure complement.
template <class S>
RauzyRule rauzy_rule(const Iet<S>& iet) {
  const int n = iet.n();
  const int t = iet.perm().preimage(n);
  const S& last = iet.lengths()[static_cast<std::size_t>(n - 1)];
  const S& moved_last = iet.lengths()[static_cast<std::size_t>(t - 1)];
  if (ArithTraits<S>::tie(last, moved_last))
    throw DegeneracyError("rauzy_rule: lambda^n ties lambda^{pi^{-1}(n)}");
  return last < moved_last ? RauzyRule::A : RauzyRule::B;
}

template <class S>
struct RauzyStepResult {
  Iet<S> next;
  RauzyRule rule;
  int t;  // pi^{-1}(n) of the parent IET
};

// One step of Rauzy-Veech induction, by closed-form update. The update
// was derived from the first-return construction and rauzy_step is
// required (and tested) to agree with first_return_map at cutoff
// |lambda| - lambda^n (rule A) or |lambda| - lambda^{pi^{-1}(n)} (rule B).
//
// Rule A: interval I_t (t = pi^{-1}(n)) splits; its right part of width
// lambda^n returns in two steps through I_n. Domain order becomes
//   (l_1..l_{t-1}, l_t - l_n, l_n, l_{t+1}..l_{n-1}),
//   pi'(j) = pi(j) for j < t, pi'(t) = n, pi'(t+1) = pi(n),
//   pi'(j) = pi(j-1) for j > t+1.
// Rule B: all of I_t returns in two steps; I_n loses its right part.
//   (l_1..l_{n-1}, l_n - l_t),
//   pi'(t) = pi(n)+1, pi'(n) = pi(n),
//   otherwise pi'(j) = pi(j) + (pi(j) > pi(n) ? 1 : 0).
template <class S>
RauzyStepResult<S> rauzy_step(const Iet<S>& iet) {
  const RauzyRule rule = rauzy_rule(iet);
  const int n = iet.n();
  const int t = iet.perm().preimage(n);
  const auto& lam = iet.lengths();
  const Permutation& pi = iet.perm();

  std::vector<S> lengths;
  std::vector<int> images(static_cast<std::size_t>(n));
  lengths.reserve(static_cast<std::size_t>(n));

  if (rule == RauzyRule::A) {
    for (int k = 1; k <= t - 1; ++k) lengths.push_back(lam[static_cast<std::size_t>(k - 1)]);
    lengths.push_back(lam[static_cast<std::size_t>(t - 1)] - lam[static_cast<std::size_t>(n - 1)]);
    lengths.push_back(lam[static_cast<std::size_t>(n - 1)]);
    for (int k = t + 1; k <= n - 1; ++k) lengths.push_back(lam[static_cast<std::size_t>(k - 1)]);

    for (int j = 1; j <= t - 1; ++j) images[static_cast<std::size_t>(j - 1)] = pi.image(j);
    images[static_cast<std::size_t>(t - 1)] = n;
    images[static_cast<std::size_t>(t)] = pi.image(n);
    for (int j = t + 2; j <= n; ++j) images[static_cast<std::size_t>(j - 1)] = pi.image(j - 1);
  } else {
    lengths = lam;
    lengths[static_cast<std::size_t>(n - 1)] = lam[static_cast<std::size_t>(n - 1)] - lam[static_cast<std::size_t>(t - 1)];

    const int pn = pi.image(n);
    for (int j = 1; j <= n - 1; ++j) {
      if (j == t) continue;
      const int v = pi.image(j);
      images[static_cast<std::size_t>(j - 1)] = v < pn ? v : v + 1;
    }
    images[static_cast<std::size_t>(t - 1)] = pn + 1;
    images[static_cast<std::size_t>(n - 1)] = pn;
  }

  return RauzyStepResult<S>{Iet<S>::unchecked(std::move(lengths), Permutation(std::move(images))), rule, t};
}

// Return times to the new induction interval from those to the old one.
// New interval t (rule B) resp. t+1 (rule A) crosses I_t then I_n before
// returning, so its height is the sum; everything else passes through a
// single old interval.
inline std::vector<long long> compose_return_times(const std::vector<long long>& a, RauzyRule rule, int t) {
  const int n = static_cast<int>(a.size());
  std::vector<long long> out;
  out.reserve(static_cast<std::size_t>(n));
  if (rule == RauzyRule::A) {
    for (int j = 1; j <= t; ++j) out.push_back(a[static_cast<std::size_t>(j - 1)]);
    out.push_back(a[static_cast<std::size_t>(t - 1)] + a[static_cast<std::size_t>(n - 1)]);
    for (int j = t + 2; j <= n; ++j) out.push_back(a[static_cast<std::size_t>(j - 2)]);
  } else {
    out = a;
    out[static_cast<std::size_t>(t - 1)] = a[static_cast<std::size_t>(t - 1)] + a[static_cast<std::size_t>(n - 1)];
  }
  return out;
}

struct P1Result {
  bool pass = false;
  long long b = 0;       // largest verified b (capped)
  bool truncated = false;  // budget ran out before the cap was reached
};

// Veech property P1(eps, m): no interior breakpoint of the ORIGINAL map
// lies in T^k I_m for 0 <= k < b, with b >= eps |lambda| / |lambda_m|.
// Following the source convention, membership uses the closed interval
// [c, c + |lambda_m|]. Iteration is capped at ceil(eps |lambda|/|lambda_m|)
// since larger b proves nothing extra; a separate budget guards runaway
// caps when |lambda_m| is tiny.
template <class S>
P1Result check_p1_core(const Iet<S>& iet, const S& lambda_m_total, const S& epsilon, long long budget = 1000000) {
  const S bound = epsilon * iet.total() / lambda_m_total;
  // The cap can dwarf any long once |lambda_m| is tiny; compare against
  // the budget before taking the ceiling.
  long long cap = 0;
  if (bound > S(0)) {
    if (bound > S(static_cast<long>(budget)))
      cap = budget + 1;
    else
      cap = static_cast<long long>(ArithTraits<S>::ceil_to_long(bound));
  }
  const long long limit = std::min(cap, budget);

  const auto& beta = iet.breakpoints();
  const int n = iet.n();
  S c(0);
  for (long long k = 0; k < limit; ++k) {
    for (int i = 1; i <= n - 1; ++i) {
      const S& b = beta[static_cast<std::size_t>(i)];
      if (b >= c && b <= c + lambda_m_total) {
        // breakpoint inside closed T^k I_m: b_max = k
        return P1Result{S(static_cast<long>(k)) >= bound, k, false};
      }
    }
    c = iet.apply(c);
  }
  if (cap > budget) return P1Result{false, budget, true};
  return P1Result{true, cap, false};
}

template <class S>
struct OrbitState {
  std::vector<S> lengths;
  Permutation perm;
  S total;                              // |lambda_m|
  std::vector<long long> return_times;  // a^k_m: first return of I^k_m into I_m under the original T
  bool cond1 = true;                    // irreducibility condition (1) at this state
  bool cond2 = true;                    // condition (2); induction can break it (flagged, not fatal)
  S p2_min_ratio;                       // min_i lambda^i_m / |lambda_m|
  long long p1_b = -1;                  // filled when epsilon was supplied
  bool p1_pass = false;
  bool p1_truncated = false;
};

template <class S>
struct InductionTrace {
  std::vector<OrbitState<S>> states;  // m = 0..M
  std::vector<RauzyRule> rules;       // rule applied at state m; size M
  std::optional<long> degenerate_at;  // state index where a tie stopped the orbit
  bool has_p1 = false;

  long depth() const { return static_cast<long>(rules.size()); }
};

// Iterate R for up to `depth` steps, accumulating return times and
// irreducibility flags; stops early (with a report, not an error) on a
// Rauzy tie. When epsilon is given, each state also carries its P1 data.
template <class S>
InductionTrace<S> induction_orbit(const Iet<S>& iet, long depth,
                                  const std::optional<S>& epsilon = std::nullopt,
                                  long long p1_budget = 1000000) {
  InductionTrace<S> trace;
  trace.has_p1 = epsilon.has_value();

  std::vector<long long> heights(static_cast<std::size_t>(iet.n()), 1);
  Iet<S> cur = iet;

  auto record = [&](const Iet<S>& it) {
    auto irr = check_irreducible(it.perm());
    S min_len = it.lengths()[0];
    for (const S& l : it.lengths())
      if (l < min_len) min_len = l;
    OrbitState<S> st{
        it.lengths(), it.perm(), it.total(), heights,
        irr.condition1, irr.condition2, min_len / it.total(),
    };
    if (epsilon) {
      P1Result p1 = check_p1_core(iet, it.total(), *epsilon, p1_budget);
      st.p1_b = p1.b;
      st.p1_pass = p1.pass;
      st.p1_truncated = p1.truncated;
    }
    trace.states.push_back(std::move(st));
  };

  record(cur);
  for (long m = 0; m < depth; ++m) {
    std::optional<RauzyStepResult<S>> step;
    try {
      step = rauzy_step(cur);
    } catch (const DegeneracyError&) {
      trace.degenerate_at = m;
      break;
    }
    heights = compose_return_times(heights, step->rule, step->t);
    cur = step->next;
    trace.rules.push_back(step->rule);
    record(cur);
  }
  return trace;
}

template <class S>
std::pair<bool, long long> check_P1(const Iet<S>& iet, const InductionTrace<S>& trace, long m, const S& epsilon,
                                    long long budget = 1000000) {
  const auto& st = trace.states.at(static_cast<std::size_t>(m));
  P1Result r = check_p1_core(iet, st.total, epsilon, budget);
  return {r.pass, r.b};
}

template <class S>
bool check_P2(const InductionTrace<S>& trace, long m, const S& epsilon) {
  return trace.states.at(static_cast<std::size_t>(m)).p2_min_ratio >= epsilon;
}

// First return time of x into [0, limit) under iet (at least one step).
// Test-side cross-check for the accumulated a^k_m.
template <class S>
long long direct_return_time(const Iet<S>& iet, S x, const S& limit, long long budget = 1000000) {
  for (long long k = 1; k <= budget; ++k) {
    x = iet.apply(x);
    if (x < limit) return k;
  }
  throw BudgetError("direct_return_time: budget exhausted");
}

// Smallest m <= max_m with P1(eps,m) and P2(eps,m); nullopt if none (or
// the orbit dies in a tie first).
template <class S>
std::optional<long> search_p1p2(const Iet<S>& iet, const S& epsilon, long max_m, long long p1_budget = 1000000) {
  Iet<S> cur = iet;
  for (long m = 0; m <= max_m; ++m) {
    S min_len = cur.lengths()[0];
    for (const S& l : cur.lengths())
      if (l < min_len) min_len = l;
    const bool p2 = min_len >= epsilon * cur.total();
    if (p2 && check_p1_core(iet, cur.total(), epsilon, p1_budget).pass) return m;
    if (m == max_m) break;
    try {
      cur = rauzy_step(cur).next;
    } catch (const DegeneracyError&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace ietlab
