#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string_view>

#include "twoatom/errors.hpp"
#include "twoatom/qstate.hpp"

namespace twoatom {

/// sigma_2 (x) sigma_2 in the canonical basis.
inline Matrix4 spin_flip_operator() { return kron(pauli::y(), pauli::y()); }

/// (sigma_2 (x) sigma_2) conj(rho) (sigma_2 (x) sigma_2)
inline Matrix4 spin_flip(const Matrix4& rho) {
  const Matrix4 flip = spin_flip_operator();
  return flip * rho.conjugate() * flip;
}

inline Matrix4 spin_flip(const DensityMatrix& rho) { return spin_flip(rho.matrix()); }

namespace detail {

struct HermitianFactor {
  Matrix4 vectors;
  Eigen::Vector4d values;  // clamped at zero
};

inline HermitianFactor factor_psd(const Matrix4& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix4> es(rho);
  if (es.info() != Eigen::Success)
    throw Error(ErrorKind::EigenFailure, "eigendecomposition of rho did not converge");
  HermitianFactor f{es.eigenvectors(), es.eigenvalues()};
  if (f.values.minCoeff() < -kPsdTol)
    throw Error(ErrorKind::EigenFailure, "rho has a negative eigenvalue below tolerance",
                -f.values.minCoeff());
  f.values = f.values.cwiseMax(0.0);
  return f;
}

inline Eigen::Vector4d singular_values(const Matrix4& m) {
  Eigen::JacobiSVD<Matrix4> svd(m);
  return svd.singularValues();  // descending
}

}  // namespace detail

/// Square roots of the eigenvalues of rho * spin_flip(rho), descending.
///
/// Writing rho = X X^dagger with X = V sqrt(w), these are the singular values
/// of the symmetric matrix tau = X^T (sigma_2 (x) sigma_2) X. Taking them from an
/// SVD keeps zero eigenvalues at O(eps) instead of O(sqrt(eps)).
inline Eigen::Vector4d concurrence_spectrum(const DensityMatrix& rho) {
  const auto f = detail::factor_psd(rho.matrix());
  const Matrix4 x = f.vectors * f.values.cwiseSqrt().cast<cplx>().asDiagonal();
  const Matrix4 tau = x.transpose() * spin_flip_operator() * x;
  return detail::singular_values(tau);
}

/// Wootters concurrence max(0, l1 - l2 - l3 - l4).
inline double concurrence(const DensityMatrix& rho) {
  const Eigen::Vector4d l = concurrence_spectrum(rho);
  return std::clamp(l(0) - l(1) - l(2) - l(3), 0.0, 1.0);
}

/// Hermitian square root of a PSD matrix.
inline Matrix4 sqrt_psd(const Matrix4& m) {
  const auto f = detail::factor_psd(m);
  return f.vectors * f.values.cwiseSqrt().cast<cplx>().asDiagonal() * f.vectors.adjoint();
}

/// rho_hat = sqrt( sqrt(rho) rho_tilde sqrt(rho) ).
///
/// The inner product equals M M^dagger with M = sqrt(rho) S conj(sqrt(rho)),
/// so its square root is U Sigma U^dagger from the SVD M = U Sigma W^dagger.
inline Matrix4 concurrence_root_matrix(const DensityMatrix& rho) {
  const Matrix4 root = sqrt_psd(rho.matrix());
  const Matrix4 m = root * spin_flip_operator() * root.conjugate();
  Eigen::JacobiSVD<Matrix4> svd(m, Eigen::ComputeFullU);
  const Matrix4& u = svd.matrixU();
  return u * svd.singularValues().cast<cplx>().asDiagonal() * u.adjoint();
}

/// C = max(0, 2 lambda_max(rho_hat) - tr rho_hat), via matrix square roots.
inline double concurrence_sqrt_form(const DensityMatrix& rho) {
  const Matrix4 hat = concurrence_root_matrix(rho);
  Eigen::SelfAdjointEigenSolver<Matrix4> es(0.5 * (hat + hat.adjoint()), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw Error(ErrorKind::EigenFailure, "eigendecomposition of rho_hat did not converge");
  const double lambda_max = es.eigenvalues().maxCoeff();
  return std::clamp(2.0 * lambda_max - hat.trace().real(), 0.0, 1.0);
}

/// Closed form for states whose only non-zero entries sit on the diagonal and
/// the (f1,f4) / (f2,f3) anti-diagonal blocks.
inline double concurrence_x_form(const DensityMatrix& rho) {
  const auto& m = rho.matrix();
  const auto p = [&](int i) { return std::max(0.0, m(i, i).real()); };
  const double inner = std::abs(m(1, 2)) - std::sqrt(p(0) * p(3));
  const double outer = std::abs(m(0, 3)) - std::sqrt(p(1) * p(2));
  return std::max({0.0, 2.0 * inner, 2.0 * outer});
}

/// Largest modulus among entries outside the X pattern.
inline double x_form_defect(const Matrix4& m) {
  double worst = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const bool on_x = i == j || i + j == 3;
      if (!on_x) worst = std::max(worst, std::abs(m(i, j)));
    }
  return worst;
}

/// F = <a|rho|a>
inline double fidelity_singlet(const DensityMatrix& rho) {
  const auto& m = rho.matrix();
  return 0.5 * (m(1, 1).real() + m(2, 2).real()) - m(1, 2).real();
}

/// tr rho^2
inline double purity(const DensityMatrix& rho) { return rho.matrix().cwiseAbs2().sum(); }

enum class LocalLabel { Us, Uplus, Uminus };

inline std::string_view to_string(LocalLabel label) {
  switch (label) {
    case LocalLabel::Us: return "Us";
    case LocalLabel::Uplus: return "Uplus";
    case LocalLabel::Uminus: return "Uminus";
  }
  return "?";
}

/// Product unitary carrying W_a onto the other Werner family members.
struct LocalUnitary {
  Matrix4 u;
  LocalLabel label;

  static LocalUnitary make(LocalLabel label) {
    switch (label) {
      case LocalLabel::Us: return {kron(pauli::z(), pauli::identity()), label};
      case LocalLabel::Uplus: return {kron(pauli::identity(), kI * pauli::y()), label};
      case LocalLabel::Uminus: return {kron(pauli::identity(), pauli::x()), label};
    }
    return {Matrix4::Identity(), label};
  }
};

/// u rho u^dagger
inline DensityMatrix apply_local(const LocalUnitary& u, const DensityMatrix& rho) {
  return DensityMatrix::make(u.u * rho.matrix() * u.u.adjoint());
}

}  // namespace twoatom
