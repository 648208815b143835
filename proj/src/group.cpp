#include "ietlab/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ietlab {

const char* to_string(Backend b) {
  switch (b) {
    case Backend::U1: return "u1";
    case Backend::Torus: return "torus";
    case Backend::SU2: return "su2";
    case Backend::SO3: return "so3";
  }
  return "?";
}

Backend backend_from_string(const std::string& name) {
  if (name == "u1") return Backend::U1;
  if (name == "torus") return Backend::Torus;
  if (name == "su2") return Backend::SU2;
  if (name == "so3") return Backend::SO3;
  throw ValidationError("unknown backend: " + name);
}

namespace {

std::array<double, 4> normalize_quat(std::array<double, 4> q) {
  double norm = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
  if (!(norm > 0.0)) throw ValidationError("quaternion must be nonzero");
  for (double& c : q) c /= norm;
  return q;
}

// SO3 representative: first nonzero coordinate positive.
std::array<double, 4> canonical_sign(std::array<double, 4> q) {
  for (double c : q) {
    if (c > 0.0) return q;
    if (c < 0.0) {
      for (double& v : q) v = -v;
      return q;
    }
  }
  return q;
}

std::array<double, 4> quat_mul(const std::array<double, 4>& a, const std::array<double, 4>& b) {
  return {
      a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
      a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
      a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
      a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
  };
}

// Chord |a - sign*b| on S^3; the asin form keeps tiny distances exact
// where arccos of the dot product loses half the mantissa.
double quat_chord(const std::array<double, 4>& a, const std::array<double, 4>& b, double sign) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double diff = a[static_cast<std::size_t>(i)] - sign * b[static_cast<std::size_t>(i)];
    s += diff * diff;
  }
  return std::sqrt(s);
}

double circle_dist(const Rational& a, const Rational& b) {
  double d = (a - b).mod1().to_double();
  return std::min(d, 1.0 - d);
}

}  // namespace

GroupElement GroupElement::u1(Rational angle) {
  return GroupElement(Backend::U1, {angle.mod1()}, {1, 0, 0, 0});
}

GroupElement GroupElement::torus(std::vector<Rational> angles) {
  if (angles.empty()) throw ValidationError("torus element needs at least one angle");
  for (Rational& a : angles) a = a.mod1();
  return GroupElement(Backend::Torus, std::move(angles), {1, 0, 0, 0});
}

GroupElement GroupElement::su2(double w, double x, double y, double z) {
  return GroupElement(Backend::SU2, {}, normalize_quat({w, x, y, z}));
}

GroupElement GroupElement::so3(double w, double x, double y, double z) {
  return GroupElement(Backend::SO3, {}, canonical_sign(normalize_quat({w, x, y, z})));
}

GroupElement GroupElement::identity(Backend b, int torus_dim) {
  switch (b) {
    case Backend::U1: return u1(Rational(0));
    case Backend::Torus: return torus(std::vector<Rational>(static_cast<std::size_t>(torus_dim), Rational(0)));
    case Backend::SU2: return su2(1, 0, 0, 0);
    case Backend::SO3: return so3(1, 0, 0, 0);
  }
  throw ValidationError("bad backend");
}

bool same_backend(const GroupElement& a, const GroupElement& b) {
  if (a.backend() != b.backend()) return false;
  if (a.backend() == Backend::Torus) return a.torus_dim() == b.torus_dim();
  return true;
}

GroupElement mul(const GroupElement& a, const GroupElement& b) {
  if (!same_backend(a, b)) throw BackendMismatchError("mul: backends differ");
  switch (a.backend()) {
    case Backend::U1:
      return GroupElement::u1(a.angles()[0] + b.angles()[0]);
    case Backend::Torus: {
      std::vector<Rational> sum(a.angles());
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += b.angles()[i];
      return GroupElement::torus(std::move(sum));
    }
    case Backend::SU2: {
      auto q = quat_mul(a.quat(), b.quat());
      return GroupElement::su2(q[0], q[1], q[2], q[3]);
    }
    case Backend::SO3: {
      auto q = quat_mul(a.quat(), b.quat());
      return GroupElement::so3(q[0], q[1], q[2], q[3]);
    }
  }
  throw BackendMismatchError("mul: bad backend");
}

GroupElement inv(const GroupElement& a) {
  switch (a.backend()) {
    case Backend::U1:
      return GroupElement::u1(-a.angles()[0]);
    case Backend::Torus: {
      std::vector<Rational> neg;
      neg.reserve(a.angles().size());
      for (const Rational& t : a.angles()) neg.push_back(-t);
      return GroupElement::torus(std::move(neg));
    }
    case Backend::SU2:
      return GroupElement::su2(a.quat()[0], -a.quat()[1], -a.quat()[2], -a.quat()[3]);
    case Backend::SO3:
      return GroupElement::so3(a.quat()[0], -a.quat()[1], -a.quat()[2], -a.quat()[3]);
  }
  throw BackendMismatchError("inv: bad backend");
}

double dist(const GroupElement& a, const GroupElement& b) {
  if (!same_backend(a, b)) throw BackendMismatchError("dist: backends differ");
  switch (a.backend()) {
    case Backend::U1:
      return circle_dist(a.angles()[0], b.angles()[0]);
    case Backend::Torus: {
      double d = 0.0;
      for (std::size_t i = 0; i < a.angles().size(); ++i)
        d = std::max(d, circle_dist(a.angles()[i], b.angles()[i]));
      return d;
    }
    case Backend::SU2:
      // great-circle distance on S^3, so dist(I, -I) = pi
      return 2.0 * std::asin(std::clamp(quat_chord(a.quat(), b.quat(), 1.0) / 2.0, 0.0, 1.0));
    case Backend::SO3: {
      // rotation angle: the quotient identifies +-q
      const double chord = std::min(quat_chord(a.quat(), b.quat(), 1.0), quat_chord(a.quat(), b.quat(), -1.0));
      return 4.0 * std::asin(std::clamp(chord / 2.0, 0.0, 1.0));
    }
  }
  throw BackendMismatchError("dist: bad backend");
}

GroupElement haar_sample(Backend b, RngStream& rng, int torus_dim) {
  switch (b) {
    case Backend::U1:
      return GroupElement::u1(rng.unit_rational());
    case Backend::Torus: {
      std::vector<Rational> angles;
      angles.reserve(static_cast<std::size_t>(torus_dim));
      for (int i = 0; i < torus_dim; ++i) angles.push_back(rng.unit_rational());
      return GroupElement::torus(std::move(angles));
    }
    case Backend::SU2:
    case Backend::SO3: {
      // Normalized 4d Gaussian is uniform on S^3.
      std::array<double, 4> q{};
      double norm2 = 0.0;
      do {
        for (double& c : q) c = rng.gaussian();
        norm2 = q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3];
      } while (norm2 < 1e-20);
      return b == Backend::SU2 ? GroupElement::su2(q[0], q[1], q[2], q[3])
                               : GroupElement::so3(q[0], q[1], q[2], q[3]);
    }
  }
  throw ValidationError("bad backend");
}

GTuple::GTuple(std::vector<GroupElement> elems) : elems_(std::move(elems)) {
  if (elems_.empty()) throw ValidationError("GTuple must be nonempty");
  for (const GroupElement& e : elems_)
    if (!same_backend(e, elems_.front()))
      throw BackendMismatchError("GTuple elements must share one backend");
}

GTuple haar_tuple(Backend b, int n, RngStream& rng, int torus_dim) {
  std::vector<GroupElement> elems;
  elems.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) elems.push_back(haar_sample(b, rng, torus_dim));
  return GTuple(std::move(elems));
}

GTuple identity_tuple(Backend b, int n, int torus_dim) {
  std::vector<GroupElement> elems(static_cast<std::size_t>(n), GroupElement::identity(b, torus_dim));
  return GTuple(std::move(elems));
}

GTuple nielsen_alpha(const GTuple& t, int i, int j) {
  if (i < 1 || j <= i || j > t.size()) throw ValidationError("nielsen_alpha: need 1 <= i < j <= n");
  std::vector<GroupElement> out = t.elements();
  std::swap(out[static_cast<std::size_t>(i - 1)], out[static_cast<std::size_t>(j - 1)]);
  return GTuple(std::move(out));
}

GTuple nielsen_beta(const GTuple& t) {
  if (t.size() < 2) throw ValidationError("nielsen_beta: need n >= 2");
  std::vector<GroupElement> out = t.elements();
  out[0] = mul(t[1], t[0]);
  return GTuple(std::move(out));
}

namespace {

int moved_last_index(const GTuple& t, const Permutation& perm, const char* who) {
  if (t.size() != perm.n())
    throw ValidationError(std::string(who) + ": tuple length must match permutation size");
  const int tpos = perm.preimage(perm.n());
  if (tpos == perm.n())
    throw ValidationError(std::string(who) + ": pi(n) = n is outside the Rauzy domain");
  return tpos;
}

}  // namespace

GTuple rauzy_A(const GTuple& t, const Permutation& perm) {
  const int n = perm.n();
  const int tpos = moved_last_index(t, perm, "rauzy_A");
  std::vector<GroupElement> h;
  h.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= tpos; ++k) h.push_back(t[k - 1]);
  h.push_back(mul(t[n - 1], t[tpos - 1]));
  for (int k = tpos + 2; k <= n; ++k) h.push_back(t[k - 2]);
  return GTuple(std::move(h));
}

GTuple rauzy_B(const GTuple& t, const Permutation& perm) {
  const int n = perm.n();
  const int tpos = moved_last_index(t, perm, "rauzy_B");
  std::vector<GroupElement> h = t.elements();
  h[static_cast<std::size_t>(tpos - 1)] = mul(t[n - 1], t[tpos - 1]);
  return GTuple(std::move(h));
}

GTuple rauzy_A_inverse(const GTuple& h, const Permutation& perm) {
  const int n = perm.n();
  const int tpos = moved_last_index(h, perm, "rauzy_A_inverse");
  std::vector<GroupElement> g;
  g.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= tpos; ++k) g.push_back(h[k - 1]);
  for (int k = tpos + 1; k <= n - 1; ++k) g.push_back(h[k]);
  g.push_back(mul(h[tpos], inv(h[tpos - 1])));
  return GTuple(std::move(g));
}

GTuple rauzy_B_inverse(const GTuple& h, const Permutation& perm) {
  const int n = perm.n();
  const int tpos = moved_last_index(h, perm, "rauzy_B_inverse");
  std::vector<GroupElement> g = h.elements();
  g[static_cast<std::size_t>(tpos - 1)] = mul(inv(h[n - 1]), h[tpos - 1]);
  return GTuple(std::move(g));
}

}  // namespace ietlab
