#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "ietlab/group.hpp"

namespace ietlab {

// Unitary irreducible representations of the supported backends:
//   U1      characters  p in Z              (d = 1)
//   Torus^k characters  (p_1..p_k) in Z^k   (d = 1)
//   SU2     spin j in {0, 1/2, 1, 3/2, ...} (d = 2j+1)
//   SO3     spin j in {0, 1, 2, ...}        (d = 2j+1, via the double cover)
// Spin-j is realized on degree-2j homogeneous polynomials in two variables
// with the factorial-normalized monomial basis, which makes it unitary.
class Representation {
 public:
  static Representation u1_char(long p);
  static Representation torus_char(std::vector<long> p);
  // twice_j = 2j; SO3 requires even twice_j (integer spin).
  static Representation spin(Backend b, int twice_j);

  // Labels look like "char:2", "char:1,0,-2", "spin:1/2", "spin:2".
  static std::optional<Representation> parse(Backend b, const std::string& label);

  Backend backend() const { return backend_; }
  int dim() const;
  bool trivial() const;
  std::string label() const;

  Eigen::MatrixXcd eval(const GroupElement& g) const;

 private:
  Representation(Backend b, std::vector<long> p, int twice_j)
      : backend_(b), char_p_(std::move(p)), twice_j_(twice_j) {}

  Backend backend_;
  std::vector<long> char_p_;  // character exponents (U1/Torus)
  int twice_j_ = 0;           // 2j (SU2/SO3)
};

inline Eigen::MatrixXcd rep_eval(const Representation& rep, const GroupElement& g) { return rep.eval(g); }

// SU(2) matrix of a unit quaternion: U = w*I - i(x sx + y sy + z sz),
// so a z-rotation by psi maps to diag(e^{-i psi/2}, e^{+i psi/2}).
Eigen::Matrix2cd su2_matrix(const std::array<double, 4>& q);

}  // namespace ietlab
