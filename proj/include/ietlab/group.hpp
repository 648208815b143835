#pragma once

#include <array>
#include <string>
#include <vector>

#include "ietlab/errors.hpp"
#include "ietlab/permutation.hpp"
#include "ietlab/rational.hpp"
#include "ietlab/rng.hpp"

namespace ietlab {

// Compact connected group backends. U1/Torus keep exact rational angles
// in [0,1) (products are exact); SU2 keeps a unit quaternion, renormalized
// after every product; SO3 is the SU2 double cover with a canonical sign.
enum class Backend { U1, Torus, SU2, SO3 };

const char* to_string(Backend b);
Backend backend_from_string(const std::string& name);

class GroupElement {
 public:
  static GroupElement u1(Rational angle);
  static GroupElement torus(std::vector<Rational> angles);
  static GroupElement su2(double w, double x, double y, double z);
  static GroupElement so3(double w, double x, double y, double z);
  static GroupElement identity(Backend b, int torus_dim = 1);

  Backend backend() const { return backend_; }
  const std::vector<Rational>& angles() const { return angles_; }
  const std::array<double, 4>& quat() const { return quat_; }
  int torus_dim() const { return static_cast<int>(angles_.size()); }

 private:
  GroupElement(Backend b, std::vector<Rational> angles, std::array<double, 4> q)
      : backend_(b), angles_(std::move(angles)), quat_(q) {}

  Backend backend_;
  std::vector<Rational> angles_;  // U1 (one entry) / Torus
  std::array<double, 4> quat_{1.0, 0.0, 0.0, 0.0};
};

GroupElement mul(const GroupElement& a, const GroupElement& b);
GroupElement inv(const GroupElement& a);
// Bi-invariant metric: circle distance (max over coordinates on the
// torus); great-circle distance on S^3 for SU2, so dist(I,-I) = pi;
// rotation angle 2*arccos|<a,b>| for SO3.
double dist(const GroupElement& a, const GroupElement& b);
bool same_backend(const GroupElement& a, const GroupElement& b);

GroupElement haar_sample(Backend b, RngStream& rng, int torus_dim = 1);

// n-tuple over a single backend; drives the simple function phi.
class GTuple {
 public:
  explicit GTuple(std::vector<GroupElement> elems);

  int size() const { return static_cast<int>(elems_.size()); }
  Backend backend() const { return elems_.front().backend(); }
  const GroupElement& operator[](int i) const { return elems_[static_cast<std::size_t>(i)]; }
  const std::vector<GroupElement>& elements() const { return elems_; }

 private:
  std::vector<GroupElement> elems_;
};

GTuple haar_tuple(Backend b, int n, RngStream& rng, int torus_dim = 1);
GTuple identity_tuple(Backend b, int n, int torus_dim = 1);

// Elementary Nielsen maps: swap coordinates i < j (1-based); replace the
// first coordinate by g^2 g^1.
GTuple nielsen_alpha(const GTuple& t, int i, int j);
GTuple nielsen_beta(const GTuple& t);

// Rauzy maps on G^n. With t = pi^{-1}(n):
//   A: h^k = g^k (k <= t), h^{t+1} = g^n g^t, h^k = g^{k-1} (k >= t+2)
//   B: h^k = g^k (k != t), h^t = g^n g^t
GTuple rauzy_A(const GTuple& t, const Permutation& perm);
GTuple rauzy_B(const GTuple& t, const Permutation& perm);
GTuple rauzy_A_inverse(const GTuple& t, const Permutation& perm);
GTuple rauzy_B_inverse(const GTuple& t, const Permutation& perm);

}  // namespace ietlab
