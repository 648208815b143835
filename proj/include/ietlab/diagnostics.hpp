#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include "ietlab/representation.hpp"
#include "ietlab/skew.hpp"

namespace ietlab {

struct DefectResult {
  double value = 0.0;         // lambda_min of H = sum_k (Theta(g^k)-I)^* (Theta(g^k)-I)
  Eigen::VectorXcd argmin;    // unit vector attaining it
  double residual = 0.0;      // ||H w - value w||, solver sanity
};

// Computable surrogate for the distance of a tuple to the common-fixed-
// vector set S: zero iff some unit w has Theta(g^k) w = w for every k.
DefectResult fixed_vector_defect(const GTuple& tuple, const Representation& rep);

struct HaarInvarianceReport {
  double max_deviation_a = 0.0;  // rauzy_A pushforward vs direct sampling
  double max_deviation_b = 0.0;
  double bound = 0.0;            // 5 / sqrt(M)
  long samples = 0;
  bool pass() const { return max_deviation_a <= bound && max_deviation_b <= bound; }
};

// Monte Carlo check that the Rauzy maps preserve Haar measure on G^n:
// every matrix coefficient of rep, at every coordinate, has the same
// empirical mean under pushforward as under direct sampling, within
// 5/sqrt(M).
HaarInvarianceReport haar_invariance_stat(Backend b, const Permutation& perm,
                                          const Representation& rep, long M,
                                          RngStream& rng, int torus_dim = 1);

struct DefectTrajectory {
  std::vector<double> defect;            // index m = 0..depth
  std::vector<Eigen::VectorXcd> argmin;
  std::vector<double> base_total;        // |lambda_m| as double, for reports
  std::optional<long> degenerate_at;
  double min_defect() const {
    double v = defect.empty() ? 0.0 : defect.front();
    for (double d : defect) v = std::min(v, d);
    return v;
  }
};

// Defect of g_m along the extended induction orbit. A persistent
// bounded-below defect is the generic signature of no eigen-solution;
// convergence to zero is what a solution would force.
template <class S>
DefectTrajectory defect_trajectory(const SkewTriple<S>& s, const Representation& rep, long depth) {
  if (depth < 1) throw ValidationError("defect_trajectory: depth must be >= 1");
  DefectTrajectory out;
  SkewTriple<S> cur = s;
  for (long m = 0;; ++m) {
    DefectResult d = fixed_vector_defect(cur.tuple, rep);
    out.defect.push_back(d.value);
    out.argmin.push_back(std::move(d.argmin));
    out.base_total.push_back(ArithTraits<S>::to_double(cur.iet.total()));
    if (m == depth) break;
    try {
      cur = extended_rauzy_step(cur).next;
    } catch (const DegeneracyError&) {
      out.degenerate_at = m;
      break;
    }
  }
  return out;
}

struct MatrixAverage {
  std::vector<Eigen::MatrixXcd> per_k;  // M_k = mean of Theta(Phi_k(x))^{-1}
  Eigen::MatrixXcd cesaro;              // D_N = (1/N) sum_k M_k
  double cesaro_norm = 0.0;             // operator norm of D_N
};

// Averaged twisted products for the d >= 2 eigenfunction equation:
// ||D_N|| staying away from zero indicates an eigenvalue-1 solution,
// decay is evidence of none.
template <class S>
MatrixAverage matrix_coefficient_average(const SkewTriple<S>& s, const Representation& rep,
                                         long N, long M, RngStream& rng) {
  if (N < 1 || M < 1) throw ValidationError("matrix_coefficient_average: N, M must be >= 1");
  const int d = rep.dim();
  const int n = s.iet.n();

  std::vector<Eigen::MatrixXcd> theta;
  theta.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) theta.push_back(rep.eval(s.tuple[i]));

  MatrixAverage out;
  out.per_k.assign(static_cast<std::size_t>(N), Eigen::MatrixXcd::Zero(d, d));

  for (long sample = 0; sample < M; ++sample) {
    S x = sample_unit<S>(rng) * s.iet.total();
    Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(d, d);  // Theta(Phi_k(x))
    for (long k = 0; k < N; ++k) {
      out.per_k[static_cast<std::size_t>(k)] += prod.adjoint();
      int idx = 0;
      x = s.iet.apply_indexed(x, idx);
      prod = theta[static_cast<std::size_t>(idx - 1)] * prod;
    }
  }

  out.cesaro = Eigen::MatrixXcd::Zero(d, d);
  for (auto& mk : out.per_k) {
    mk /= static_cast<double>(M);
    out.cesaro += mk;
  }
  out.cesaro /= static_cast<double>(N);
  out.cesaro_norm = out.cesaro.jacobiSvd().singularValues()(0);
  return out;
}

// Fixed test-function catalog for the d = 1 scan.
enum class ScanTestFn { One, Exp1, Exp2, IndicatorHalf, IndicatorThird };

inline std::vector<ScanTestFn> default_scan_catalog() {
  return {ScanTestFn::One, ScanTestFn::Exp1, ScanTestFn::Exp2,
          ScanTestFn::IndicatorHalf, ScanTestFn::IndicatorThird};
}

inline const char* to_string(ScanTestFn f) {
  switch (f) {
    case ScanTestFn::One: return "one";
    case ScanTestFn::Exp1: return "exp1";
    case ScanTestFn::Exp2: return "exp2";
    case ScanTestFn::IndicatorHalf: return "ind_half";
    case ScanTestFn::IndicatorThird: return "ind_third";
  }
  return "?";
}

struct SpectralScan {
  long grid = 0;  // A
  long N = 0;
  std::vector<double> values;                // max over catalog, per grid point
  std::vector<std::vector<double>> per_fn;   // catalog-major, grid-minor
  long peak_index = 0;
  double peak_value = 0.0;
};

// Wiener-type eigenvalue scan for a one-dimensional character gamma:
// c_k = <V^k h, h> with (V h)(x) = gamma(phi(x))^{-1} h(Tx), then
// D_N(alpha_j) = (1/N) sum_k alpha_j^{-k} c_k on the grid alpha_j =
// exp(2 pi i j / A). Peaks flag candidate eigenvalues alpha.
template <class S>
SpectralScan eigenvalue_scan(const SkewTriple<S>& s, const Representation& character,
                             long N, long A, long M, RngStream& rng,
                             const std::vector<ScanTestFn>& catalog = default_scan_catalog()) {
  using complexd = std::complex<double>;
  if (character.dim() != 1) throw ValidationError("eigenvalue_scan needs a one-dimensional character");
  if (N < 1 || A < 1 || M < 1) throw ValidationError("eigenvalue_scan: N, A, M must be >= 1");
  if (catalog.empty()) throw ValidationError("eigenvalue_scan: empty test-function catalog");

  const int n = s.iet.n();
  const double total = ArithTraits<S>::to_double(s.iet.total());
  std::vector<complexd> gamma_vals;
  gamma_vals.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) gamma_vals.push_back(character.eval(s.tuple[i])(0, 0));

  auto eval_fn = [&](ScanTestFn f, const S& x) -> complexd {
    const double u = ArithTraits<S>::to_double(x) / total;
    switch (f) {
      case ScanTestFn::One: return complexd(1, 0);
      case ScanTestFn::Exp1: {
        const double arg = 2.0 * std::numbers::pi * u;
        return complexd(std::cos(arg), std::sin(arg));
      }
      case ScanTestFn::Exp2: {
        const double arg = 4.0 * std::numbers::pi * u;
        return complexd(std::cos(arg), std::sin(arg));
      }
      case ScanTestFn::IndicatorHalf: return complexd(u < 0.5 ? 1 : 0, 0);
      case ScanTestFn::IndicatorThird: return complexd(u < 1.0 / 3.0 ? 1 : 0, 0);
    }
    return complexd(0, 0);
  };

  SpectralScan out;
  out.grid = A;
  out.N = N;
  out.values.assign(static_cast<std::size_t>(A), 0.0);

  std::vector<complexd> roots(static_cast<std::size_t>(A));
  for (long r = 0; r < A; ++r) {
    const double arg = -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(A);
    roots[static_cast<std::size_t>(r)] = complexd(std::cos(arg), std::sin(arg));
  }

  for (ScanTestFn fn : catalog) {
    std::vector<complexd> c(static_cast<std::size_t>(N), complexd(0, 0));
    for (long sample = 0; sample < M; ++sample) {
      S x = sample_unit<S>(rng) * s.iet.total();
      const complexd f0 = std::conj(eval_fn(fn, x));
      complexd twist(1, 0);  // gamma(Phi_k(x))^{-1}
      for (long k = 0; k < N; ++k) {
        c[static_cast<std::size_t>(k)] += twist * eval_fn(fn, x) * f0;
        int idx = 0;
        x = s.iet.apply_indexed(x, idx);
        twist *= std::conj(gamma_vals[static_cast<std::size_t>(idx - 1)]);
      }
    }
    // Fold k mod A, then evaluate the A-point transform directly.
    std::vector<complexd> folded(static_cast<std::size_t>(A), complexd(0, 0));
    for (long k = 0; k < N; ++k) folded[static_cast<std::size_t>(k % A)] += c[static_cast<std::size_t>(k)];
    std::vector<double> mags(static_cast<std::size_t>(A));
    for (long j = 0; j < A; ++j) {
      complexd acc(0, 0);
      for (long r = 0; r < A; ++r)
        acc += folded[static_cast<std::size_t>(r)] * roots[static_cast<std::size_t>((j * r) % A)];
      mags[static_cast<std::size_t>(j)] = std::abs(acc) / (static_cast<double>(N) * static_cast<double>(M));
    }
    for (long j = 0; j < A; ++j)
      out.values[static_cast<std::size_t>(j)] = std::max(out.values[static_cast<std::size_t>(j)], mags[static_cast<std::size_t>(j)]);
    out.per_fn.push_back(std::move(mags));
  }

  for (long j = 0; j < A; ++j) {
    if (out.values[static_cast<std::size_t>(j)] > out.peak_value) {
      out.peak_value = out.values[static_cast<std::size_t>(j)];
      out.peak_index = j;
    }
  }
  return out;
}

// Cesaro average of squared correlations of the fixed observable
// f(x,y) = 1_{x < |lambda|/2} Theta(y)_{00}, mean-centered. Decay to zero
// is the operational signature of weak mixing.
template <class S>
double cesaro_correlation(const SkewTriple<S>& s, const Representation& rep,
                          long N, long M, RngStream& rng) {
  using complexd = std::complex<double>;
  if (N < 1 || M < 1) throw ValidationError("cesaro_correlation: N, M must be >= 1");
  const int n = s.iet.n();
  const int torus_dim = s.tuple[0].torus_dim();

  std::vector<Eigen::MatrixXcd> theta;
  theta.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) theta.push_back(rep.eval(s.tuple[i]));

  const S half = s.iet.total() / S(2);
  const double center = rep.trivial() ? 0.5 : 0.0;

  std::vector<complexd> rho(static_cast<std::size_t>(N), complexd(0, 0));
  for (long sample = 0; sample < M; ++sample) {
    S x = sample_unit<S>(rng) * s.iet.total();
    GroupElement y = haar_sample(s.tuple.backend(), rng, torus_dim);
    Eigen::VectorXcd col = rep.eval(y).col(0);
    auto observable = [&](const S& pos, const Eigen::VectorXcd& fiber_col) -> complexd {
      return (pos < half ? complexd(fiber_col(0)) : complexd(0, 0)) - center;
    };
    const complexd f0 = std::conj(observable(x, col));
    for (long k = 0; k < N; ++k) {
      rho[static_cast<std::size_t>(k)] += observable(x, col) * f0;
      int idx = 0;
      x = s.iet.apply_indexed(x, idx);
      col = theta[static_cast<std::size_t>(idx - 1)] * col;
    }
  }

  double acc = 0.0;
  for (long k = 0; k < N; ++k) {
    const complexd r = rho[static_cast<std::size_t>(k)] / static_cast<double>(M);
    acc += std::norm(r);
  }
  return acc / static_cast<double>(N);
}

}  // namespace ietlab
