#pragma once

// Test-only oracles. Nothing here calls into the library's generator or
// integrators, so the checks against them are independent.

#include <gtest/gtest.h>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <functional>

#include "twoatom/errors.hpp"
#include "twoatom/qstate.hpp"

namespace twoatom::testing {

inline double max_abs(const Matrix4& m) { return m.cwiseAbs().maxCoeff(); }

template <class Fn>
void expect_error(ErrorKind kind, Fn&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(kind) << ", nothing thrown";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

/// Operators written out explicitly in the f1..f4 basis.
struct Ops {
  Matrix4 sp_a, sm_a, sp_b, sm_b, s3_a, s3_b;
  Ops() {
    Matrix2 sp, sm, s3, id;
    sp << 0, 1, 0, 0;  // |1><0| with |1> = (1,0)
    sm << 0, 0, 1, 0;
    s3 << 1, 0, 0, -1;
    id.setIdentity();
    sp_a = Eigen::kroneckerProduct(sp, id);
    sm_a = Eigen::kroneckerProduct(sm, id);
    sp_b = Eigen::kroneckerProduct(id, sp);
    sm_b = Eigen::kroneckerProduct(id, sm);
    s3_a = Eigen::kroneckerProduct(s3, id);
    s3_b = Eigen::kroneckerProduct(id, s3);
  }
};

/// Generator in its expanded single-atom + cross-term form.
inline Matrix4 oracle_rhs(const Matrix4& r, const SystemParams& p) {
  static const Ops o;
  const Matrix4 h = p.omega0 * (o.s3_a + o.s3_b) + p.omega * (o.sp_a * o.sm_b + o.sp_b * o.sm_a);
  const Matrix4 single = o.sp_a * r * o.sm_a + o.sp_b * r * o.sm_b + o.sm_a * r * o.sp_a +
                         o.sm_b * r * o.sp_b - 2.0 * r;
  const Matrix4 ab = o.sm_a * o.sp_b;
  const Matrix4 ab2 = o.sp_a * o.sm_b;
  const Matrix4 ba = o.sm_b * o.sp_a;
  const Matrix4 ba2 = o.sp_b * o.sm_a;
  const Matrix4 cross1 = 2.0 * o.sp_a * r * o.sm_b + 2.0 * o.sm_a * r * o.sp_b - ab * r - r * ab -
                         ab2 * r - r * ab2;
  const Matrix4 cross2 = 2.0 * o.sp_b * r * o.sm_a + 2.0 * o.sm_b * r * o.sp_a - ba * r - r * ba -
                         ba2 * r - r * ba2;
  return -kI * (h * r - r * h) + p.gamma0 * single + 0.5 * p.gamma * (cross1 + cross2);
}

using Super = Eigen::Matrix<cplx, 16, 16>;

inline Super oracle_liouvillian(const SystemParams& p) {
  Super l;
  for (int c = 0; c < 16; ++c) {
    Matrix4 e = Matrix4::Zero();
    e(c % 4, c / 4) = 1.0;
    const Matrix4 img = oracle_rhs(e, p);
    for (int k = 0; k < 16; ++k) l(k, c) = img(k % 4, k / 4);
  }
  return l;
}

/// exp(L t) rho via the matrix exponential.
inline Matrix4 oracle_propagate(const Matrix4& rho, const SystemParams& p, double t) {
  const Super prop = (oracle_liouvillian(p) * cplx(t, 0.0)).exp();
  Eigen::Matrix<cplx, 16, 1> v;
  for (int k = 0; k < 16; ++k) v(k) = rho(k % 4, k / 4);
  const Eigen::Matrix<cplx, 16, 1> w = prop * v;
  Matrix4 out;
  for (int k = 0; k < 16; ++k) out(k % 4, k / 4) = w(k);
  return out;
}

/// |<psi| (s2 x s2) |psi*>| for a pure state.
inline double oracle_pure_concurrence(const Vector4& psi) {
  // s2 x s2 = antidiag(-1, 1, 1, -1); the overlap reduces to 2|ad - bc|.
  return 2.0 * std::abs(psi(0) * psi(3) - psi(1) * psi(2));
}

}  // namespace twoatom::testing
