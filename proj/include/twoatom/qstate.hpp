#pragma once

// Two-atom density matrices in the canonical product basis
//   f1 = |1>|1>, f2 = |1>|0>, f3 = |0>|1>, f4 = |0>|0>   (indices 0..3)
// and the collective basis
//   |e> = f1, |s> = (f2 + f3)/sqrt2, |a> = (f2 - f3)/sqrt2, |g> = f4
// ordered (e, s, a, g). Single-atom kets are stored as (amplitude on |1>,
// amplitude on |0>), so that kron() of two of them lands in f1..f4 order.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>

#include "twoatom/errors.hpp"

namespace twoatom {

using cplx = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using Vector2 = Eigen::Vector2cd;
using Vector4 = Eigen::Vector4cd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kProbTol = 1e-12;

inline constexpr cplx kI{0.0, 1.0};

inline Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

inline Vector4 kron(const Vector2& a, const Vector2& b) {
  Vector4 out;
  out << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
  return out;
}

namespace pauli {
inline Matrix2 identity() { return Matrix2::Identity(); }
inline Matrix2 x() {
  Matrix2 m;
  m << 0, 1, 1, 0;
  return m;
}
inline Matrix2 y() {
  Matrix2 m;
  m << 0, -kI, kI, 0;
  return m;
}
inline Matrix2 z() {
  Matrix2 m;
  m << 1, 0, 0, -1;
  return m;
}
// sigma_+ = (sigma_1 + i sigma_2)/2 raises |0> to |1>.
inline Matrix2 raising() { return 0.5 * (x() + kI * y()); }
inline Matrix2 lowering() { return 0.5 * (x() - kI * y()); }
}  // namespace pauli

/// Canonical-basis kets of the collective states.
namespace ket {
inline Vector4 e() { return Vector4(1, 0, 0, 0); }
inline Vector4 g() { return Vector4(0, 0, 0, 1); }
inline Vector4 s() { return Vector4(0, 1, 1, 0) / std::numbers::sqrt2; }
inline Vector4 a() { return Vector4(0, 1, -1, 0) / std::numbers::sqrt2; }
inline Vector4 plus() { return Vector4(1, 0, 0, 1) / std::numbers::sqrt2; }
inline Vector4 minus() { return Vector4(1, 0, 0, -1) / std::numbers::sqrt2; }
}  // namespace ket

inline Matrix4 projector(const Vector4& v) { return v * v.adjoint(); }

/// Columns are |e>, |s>, |a>, |g> in canonical coordinates.
inline Matrix4 collective_basis() {
  Matrix4 u;
  u.col(0) = ket::e();
  u.col(1) = ket::s();
  u.col(2) = ket::a();
  u.col(3) = ket::g();
  return u;
}

class Qubit {
 public:
  /// c0 is the amplitude on the ground state |0>, c1 on the excited state |1>.
  static Qubit make(cplx c0, cplx c1) {
    const double norm = std::norm(c0) + std::norm(c1);
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kNormTol) {
      std::ostringstream msg;
      msg << "qubit norm^2 = " << norm << ", expected 1";
      throw Error(ErrorKind::NotNormalized, msg.str(), std::abs(norm - 1.0));
    }
    return Qubit(c0, c1);
  }
  static Qubit ground() { return Qubit(1.0, 0.0); }
  static Qubit excited() { return Qubit(0.0, 1.0); }

  cplx c0() const { return c0_; }
  cplx c1() const { return c1_; }

  Vector2 ket() const { return Vector2(c1_, c0_); }

 private:
  Qubit(cplx c0, cplx c1) : c0_(c0), c1_(c1) {}
  cplx c0_;
  cplx c1_;
};

/// Validated two-qubit state. Immutable once built.
class DensityMatrix {
 public:
  /// Checks finiteness, Hermiticity, unit trace and positivity, in that order.
  static DensityMatrix make(const Matrix4& m) {
    if (!m.allFinite())
      throw Error(ErrorKind::NonFinite, "matrix has NaN or Inf entries");
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermitianTol) {
      std::ostringstream msg;
      msg << "max |m - m^dagger| = " << herm;
      throw Error(ErrorKind::NotHermitian, msg.str(), herm);
    }
    const double trace_dev = std::abs(m.trace() - 1.0);
    if (trace_dev > kTraceTol) {
      std::ostringstream msg;
      msg << "|tr m - 1| = " << trace_dev;
      throw Error(ErrorKind::TraceNotOne, msg.str(), trace_dev);
    }
    const Matrix4 h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw Error(ErrorKind::EigenFailure, "Hermitian eigensolver did not converge");
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -kPsdTol) {
      std::ostringstream msg;
      msg << "minimum eigenvalue " << min_eig << " < -" << kPsdTol;
      throw Error(ErrorKind::NotPSD, msg.str(), -min_eig);
    }
    return DensityMatrix(h);
  }

  static DensityMatrix maximally_mixed() { return DensityMatrix(Matrix4::Identity() / 4.0); }

  const Matrix4& matrix() const { return m_; }
  cplx operator()(int row, int col) const { return m_(row, col); }

 private:
  explicit DensityMatrix(const Matrix4& m) : m_(m) {}
  Matrix4 m_;
};

inline DensityMatrix make_density(const Matrix4& m) { return DensityMatrix::make(m); }

/// Matrix elements rho_xy = <x|rho|y> in the collective basis. Only the ten
/// independent entries are stored; the rest follow from Hermiticity.
struct CollectiveElements {
  double ee = 0, ss = 0, aa = 0, gg = 0;
  cplx eg{}, as_{}, ae{}, ag{}, se{}, sg{};

  CollectiveElements& operator+=(const CollectiveElements& o) {
    ee += o.ee; ss += o.ss; aa += o.aa; gg += o.gg;
    eg += o.eg; as_ += o.as_; ae += o.ae; ag += o.ag; se += o.se; sg += o.sg;
    return *this;
  }
  CollectiveElements& operator*=(double k) {
    ee *= k; ss *= k; aa *= k; gg *= k;
    eg *= k; as_ *= k; ae *= k; ag *= k; se *= k; sg *= k;
    return *this;
  }
  friend CollectiveElements operator+(CollectiveElements a, const CollectiveElements& b) { return a += b; }
  friend CollectiveElements operator*(double k, CollectiveElements a) { return a *= k; }
  friend CollectiveElements operator*(CollectiveElements a, double k) { return a *= k; }

  /// Full 4x4 matrix in the (e, s, a, g) basis.
  Matrix4 to_matrix() const {
    constexpr int E = 0, S = 1, A = 2, G = 3;
    Matrix4 c = Matrix4::Zero();
    c(E, E) = ee; c(S, S) = ss; c(A, A) = aa; c(G, G) = gg;
    c(E, G) = eg; c(G, E) = std::conj(eg);
    c(A, S) = as_; c(S, A) = std::conj(as_);
    c(A, E) = ae; c(E, A) = std::conj(ae);
    c(A, G) = ag; c(G, A) = std::conj(ag);
    c(S, E) = se; c(E, S) = std::conj(se);
    c(S, G) = sg; c(G, S) = std::conj(sg);
    return c;
  }

  static CollectiveElements from_matrix(const Matrix4& c) {
    constexpr int E = 0, S = 1, A = 2, G = 3;
    CollectiveElements out;
    out.ee = c(E, E).real(); out.ss = c(S, S).real();
    out.aa = c(A, A).real(); out.gg = c(G, G).real();
    out.eg = c(E, G); out.as_ = c(A, S); out.ae = c(A, E);
    out.ag = c(A, G); out.se = c(S, E); out.sg = c(S, G);
    return out;
  }
};

/// Change of basis without validation; used on integrator stages.
inline CollectiveElements collective_from_matrix(const Matrix4& m) {
  const Matrix4 u = collective_basis();
  return CollectiveElements::from_matrix(u.adjoint() * m * u);
}

inline Matrix4 matrix_from_collective(const CollectiveElements& c) {
  const Matrix4 u = collective_basis();
  return u * c.to_matrix() * u.adjoint();
}

inline CollectiveElements to_collective(const DensityMatrix& rho) {
  return collective_from_matrix(rho.matrix());
}

inline DensityMatrix from_collective(const CollectiveElements& c) {
  return DensityMatrix::make(matrix_from_collective(c));
}

inline DensityMatrix pure_state(const Vector4& psi) {
  return DensityMatrix::make(projector(psi));
}

/// |psi (x) phi><psi (x) phi|
inline DensityMatrix product_state(const Qubit& psi, const Qubit& phi) {
  return pure_state(kron(psi.ket(), phi.ket()));
}

inline void require_in_range(double value, double lo, double hi, const char* name) {
  if (!(value >= lo && value <= hi)) {
    std::ostringstream msg;
    msg << name << " = " << value << " outside [" << lo << ", " << hi << "]";
    throw Error(ErrorKind::OutOfRange, msg.str());
  }
}

/// Maximally entangled pure state with amplitudes
/// (a, sqrt(1-a^2) e^{i t1}, sqrt(1-a^2) e^{i t2}, -a e^{i(t1+t2)}) / sqrt2.
inline DensityMatrix max_entangled(double a, double theta1, double theta2) {
  require_in_range(a, 0.0, 1.0, "a");
  require_in_range(theta1, 0.0, 2 * std::numbers::pi, "theta1");
  require_in_range(theta2, 0.0, 2 * std::numbers::pi, "theta2");
  const double b = std::sqrt(1.0 - a * a);
  Vector4 v;
  v << a, b * std::polar(1.0, theta1), b * std::polar(1.0, theta2),
      -a * std::polar(1.0, theta1 + theta2);
  return pure_state(v / std::numbers::sqrt2);
}

enum class Anchor { a, s, plus, minus };

inline Vector4 anchor_ket(Anchor anchor) {
  switch (anchor) {
    case Anchor::a: return ket::a();
    case Anchor::s: return ket::s();
    case Anchor::plus: return ket::plus();
    case Anchor::minus: return ket::minus();
  }
  return ket::a();
}

/// (1-p) I/4 + p |anchor><anchor|
inline DensityMatrix werner_state(double p, Anchor anchor) {
  require_in_range(p, 0.0, 1.0, "p");
  return DensityMatrix::make((1.0 - p) * Matrix4::Identity() / 4.0 +
                             p * projector(anchor_ket(anchor)));
}

/// p1 |+><+| + p2 |-><-| + p3 |s><s| + p4 |a><a|
inline DensityMatrix bell_diagonal(double p1, double p2, double p3, double p4) {
  const std::array<double, 4> p{p1, p2, p3, p4};
  double sum = 0;
  for (double pi : p) {
    if (!(pi >= 0.0) || !std::isfinite(pi))
      throw Error(ErrorKind::NotAProbabilityVector, "weights must be finite and non-negative");
    sum += pi;
  }
  if (std::abs(sum - 1.0) > kProbTol) {
    std::ostringstream msg;
    msg << "weights sum to " << sum;
    throw Error(ErrorKind::NotAProbabilityVector, msg.str(), std::abs(sum - 1.0));
  }
  return DensityMatrix::make(p1 * projector(ket::plus()) + p2 * projector(ket::minus()) +
                             p3 * projector(ket::s()) + p4 * projector(ket::a()));
}

/// Real X-form state supported on the central f2/f3 block.
inline DensityMatrix x_initial(double r22, double r33, double r23) {
  if (!std::isfinite(r22) || !std::isfinite(r33) || !std::isfinite(r23))
    throw Error(ErrorKind::NonFinite, "x-state entries must be finite");
  if (std::abs(r22 + r33 - 1.0) > kProbTol)
    throw Error(ErrorKind::TraceNotOne, "r22 + r33 must equal 1", std::abs(r22 + r33 - 1.0));
  const double det = r22 * r33 - r23 * r23;
  if (r22 < -kProbTol || r33 < -kProbTol || det < -kProbTol)
    throw Error(ErrorKind::NotPSD, "need r22, r33 >= 0 and r22*r33 >= r23^2", -std::min({r22, r33, det}));
  Matrix4 m = Matrix4::Zero();
  m(1, 1) = r22;
  m(2, 2) = r33;
  m(1, 2) = m(2, 1) = r23;
  return DensityMatrix::make(m);
}

/// Projector onto cos(phi)|0>|1> + sin(phi)|1>|0>.
inline DensityMatrix pure_phi(double phi) {
  require_in_range(phi, 0.0, std::numbers::pi, "phi");
  Vector4 v(0, std::sin(phi), std::cos(phi), 0);
  return pure_state(v);
}

/// Physical rates. Times are measured in units of 1/gamma0.
struct SystemParams {
  double omega0 = 0.0;  // atomic transition frequency
  double omega = 0.0;   // dipole-dipole coupling
  double gamma0 = 1.0;  // single-atom decay rate
  double gamma = 1.0;   // collective damping rate

  static SystemParams make(double omega0, double omega, double gamma0, double gamma) {
    if (!std::isfinite(omega0) || !std::isfinite(omega) || !std::isfinite(gamma0) ||
        !std::isfinite(gamma))
      throw Error(ErrorKind::InvalidParams, "rates must be finite");
    if (omega0 < 0.0) throw Error(ErrorKind::InvalidParams, "omega0 must be >= 0");
    if (gamma0 <= 0.0) throw Error(ErrorKind::InvalidParams, "gamma0 must be > 0");
    if (gamma < 0.0 || gamma > gamma0) {
      std::ostringstream msg;
      msg << "gamma = " << gamma << " outside [0, gamma0 = " << gamma0 << "]";
      throw Error(ErrorKind::InvalidParams, msg.str());
    }
    return SystemParams{omega0, omega, gamma0, gamma};
  }
};

}  // namespace twoatom
