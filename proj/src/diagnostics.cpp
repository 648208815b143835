#include "ietlab/diagnostics.hpp"

#include <Eigen/Eigenvalues>

namespace ietlab {

DefectResult fixed_vector_defect(const GTuple& tuple, const Representation& rep) {
  const int d = rep.dim();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(d, d);
  for (int k = 0; k < tuple.size(); ++k) {
    const Eigen::MatrixXcd diff = rep.eval(tuple[k]) - eye;
    h += diff.adjoint() * diff;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("fixed_vector_defect: eigen-solver failed");

  DefectResult out;
  out.value = std::max(0.0, solver.eigenvalues()(0));
  out.argmin = solver.eigenvectors().col(0);
  out.residual = (h * out.argmin - solver.eigenvalues()(0) * out.argmin).norm();
  return out;
}

HaarInvarianceReport haar_invariance_stat(Backend b, const Permutation& perm,
                                          const Representation& rep, long M,
                                          RngStream& rng, int torus_dim) {
  const int n = perm.n();
  const int d = rep.dim();
  std::vector<Eigen::MatrixXcd> direct(static_cast<std::size_t>(n), Eigen::MatrixXcd::Zero(d, d));
  std::vector<Eigen::MatrixXcd> push_a = direct;
  std::vector<Eigen::MatrixXcd> push_b = direct;

  for (long s = 0; s < M; ++s) {
    GTuple t = haar_tuple(b, n, rng, torus_dim);
    for (int i = 0; i < n; ++i) direct[static_cast<std::size_t>(i)] += rep.eval(t[i]);

    GTuple fresh_a = haar_tuple(b, n, rng, torus_dim);
    GTuple ta = rauzy_A(fresh_a, perm);
    for (int i = 0; i < n; ++i) push_a[static_cast<std::size_t>(i)] += rep.eval(ta[i]);

    GTuple fresh_b = haar_tuple(b, n, rng, torus_dim);
    GTuple tb = rauzy_B(fresh_b, perm);
    for (int i = 0; i < n; ++i) push_b[static_cast<std::size_t>(i)] += rep.eval(tb[i]);
  }

  HaarInvarianceReport out;
  out.samples = M;
  out.bound = 5.0 / std::sqrt(static_cast<double>(M));
  for (int i = 0; i < n; ++i) {
    const Eigen::MatrixXcd da = (push_a[static_cast<std::size_t>(i)] - direct[static_cast<std::size_t>(i)]) / static_cast<double>(M);
    const Eigen::MatrixXcd db = (push_b[static_cast<std::size_t>(i)] - direct[static_cast<std::size_t>(i)]) / static_cast<double>(M);
    out.max_deviation_a = std::max(out.max_deviation_a, da.cwiseAbs().maxCoeff());
    out.max_deviation_b = std::max(out.max_deviation_b, db.cwiseAbs().maxCoeff());
  }
  return out;
}

}  // namespace ietlab
