#include "ietlab/representation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ietlab {

namespace {

using complexd = std::complex<double>;

complexd unit_phase(double turns) {
  const double arg = 2.0 * std::numbers::pi * turns;
  return complexd(std::cos(arg), std::sin(arg));
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

}  // namespace

Eigen::Matrix2cd su2_matrix(const std::array<double, 4>& q) {
  const double w = q[0], x = q[1], y = q[2], z = q[3];
  Eigen::Matrix2cd u;
  u(0, 0) = complexd(w, -z);
  u(0, 1) = complexd(-y, -x);
  u(1, 0) = complexd(y, -x);
  u(1, 1) = complexd(w, z);
  return u;
}

Representation Representation::u1_char(long p) {
  return Representation(Backend::U1, {p}, 0);
}

Representation Representation::torus_char(std::vector<long> p) {
  if (p.empty()) throw ValidationError("torus character needs at least one exponent");
  return Representation(Backend::Torus, std::move(p), 0);
}

Representation Representation::spin(Backend b, int twice_j) {
  if (b != Backend::SU2 && b != Backend::SO3)
    throw ValidationError("spin representations exist for su2/so3 only");
  if (twice_j < 0) throw ValidationError("spin must be non-negative");
  if (b == Backend::SO3 && twice_j % 2 != 0)
    throw ValidationError("so3 admits integer spins only");
  return Representation(b, {}, twice_j);
}

int Representation::dim() const {
  if (backend_ == Backend::SU2 || backend_ == Backend::SO3) return twice_j_ + 1;
  return 1;
}

bool Representation::trivial() const {
  if (backend_ == Backend::SU2 || backend_ == Backend::SO3) return twice_j_ == 0;
  for (long p : char_p_)
    if (p != 0) return false;
  return true;
}

std::string Representation::label() const {
  std::ostringstream os;
  if (backend_ == Backend::SU2 || backend_ == Backend::SO3) {
    os << "spin:";
    if (twice_j_ % 2 == 0)
      os << twice_j_ / 2;
    else
      os << twice_j_ << "/2";
  } else {
    os << "char:";
    for (std::size_t i = 0; i < char_p_.size(); ++i) {
      if (i) os << ',';
      os << char_p_[i];
    }
  }
  return os.str();
}

std::optional<Representation> Representation::parse(Backend b, const std::string& label) {
  auto colon = label.find(':');
  if (colon == std::string::npos) return std::nullopt;
  const std::string kind = label.substr(0, colon);
  const std::string body = label.substr(colon + 1);
  try {
    if (kind == "char") {
      std::vector<long> p;
      std::stringstream ss(body);
      std::string item;
      while (std::getline(ss, item, ',')) p.push_back(std::stol(item));
      if (p.empty()) return std::nullopt;
      if (b == Backend::U1) {
        if (p.size() != 1) return std::nullopt;
        return u1_char(p[0]);
      }
      if (b == Backend::Torus) return torus_char(std::move(p));
      return std::nullopt;
    }
    if (kind == "spin") {
      int twice_j = 0;
      if (auto slash = body.find('/'); slash != std::string::npos) {
        if (body.substr(slash + 1) != "2") return std::nullopt;
        twice_j = std::stoi(body.substr(0, slash));
      } else {
        twice_j = 2 * std::stoi(body);
      }
      return spin(b, twice_j);
    }
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return std::nullopt;
}

Eigen::MatrixXcd Representation::eval(const GroupElement& g) const {
  if (g.backend() != backend_)
    throw BackendMismatchError("rep_eval: element backend does not match representation");
  if (backend_ == Backend::U1 || backend_ == Backend::Torus) {
    if (static_cast<std::size_t>(g.torus_dim()) != char_p_.size())
      throw BackendMismatchError("rep_eval: torus dimension mismatch");
    // Reduce p . theta mod 1 exactly before taking the phase.
    Rational arg(0);
    for (std::size_t i = 0; i < char_p_.size(); ++i)
      arg += Rational(char_p_[i]) * g.angles()[i];
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = unit_phase(arg.mod1().to_double());
    return m;
  }

  // Spin-j on degree-N homogeneous polynomials, N = 2j. Basis
  // e_k = z1^{N-k} z2^k / sqrt((N-k)! k!), action (pi(g) f)(z) = f(z g).
  const int N = twice_j_;
  const Eigen::Matrix2cd u = su2_matrix(g.quat());
  const complexd a = u(0, 0), b = u(0, 1), c = u(1, 0), d = u(1, 1);

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(N + 1, N + 1);
  // Column k: expand (a z1 + c z2)^{N-k} (b z1 + d z2)^k over monomials.
  std::vector<complexd> pow_a(N + 1), pow_b(N + 1), pow_c(N + 1), pow_d(N + 1);
  pow_a[0] = pow_b[0] = pow_c[0] = pow_d[0] = complexd(1, 0);
  for (int i = 1; i <= N; ++i) {
    pow_a[i] = pow_a[i - 1] * a;
    pow_b[i] = pow_b[i - 1] * b;
    pow_c[i] = pow_c[i - 1] * c;
    pow_d[i] = pow_d[i - 1] * d;
  }
  for (int k = 0; k <= N; ++k) {
    const double col_norm = std::sqrt(factorial(N - k) * factorial(k));
    for (int i = 0; i <= N - k; ++i) {
      for (int j = 0; j <= k; ++j) {
        const int l = i + j;  // z2 degree of the monomial
        const complexd coeff = binomial(N - k, i) * binomial(k, j) *
                               pow_a[N - k - i] * pow_c[i] * pow_b[k - j] * pow_d[j];
        m(l, k) += coeff * std::sqrt(factorial(N - l) * factorial(l)) / col_norm;
      }
    }
  }
  return m;
}

}  // namespace ietlab
