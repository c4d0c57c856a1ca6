#pragma once

// Seeded random states and parameters for property checks and `verify`.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "twoatom/closed_form.hpp"
#include "twoatom/qstate.hpp"

namespace twoatom {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline cplx gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

inline Vector4 random_ket(Rng& rng) {
  Vector4 v;
  for (int i = 0; i < 4; ++i) v(i) = gaussian(rng);
  return v.normalized();
}

inline Qubit random_qubit(Rng& rng) {
  Vector2 v(gaussian(rng), gaussian(rng));
  v.normalize();
  return Qubit::make(v(0), v(1));
}

/// rho = G G^dagger / tr for a 4 x rank complex Gaussian G.
inline DensityMatrix random_density(Rng& rng, int rank = 4) {
  Eigen::Matrix<cplx, 4, Eigen::Dynamic> g(4, rank);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = gaussian(rng);
  const Matrix4 m = g * g.adjoint();
  return DensityMatrix::make(m / m.trace().real());
}

inline DensityMatrix random_pure(Rng& rng) { return pure_state(random_ket(rng)); }

inline DensityMatrix random_product(Rng& rng) {
  return product_state(random_qubit(rng), random_qubit(rng));
}

inline XStateInit random_x_state(Rng& rng) {
  const double r22 = uniform(rng, 0.0, 1.0);
  const double r33 = 1.0 - r22;
  const double bound = std::sqrt(r22 * r33);
  return XStateInit::make(r22, r33, uniform(rng, -bound, bound));
}

/// Cycles through every constructor family, mixed and rank-deficient alike.
inline DensityMatrix random_family_state(Rng& rng, int index) {
  constexpr double two_pi = 2 * std::numbers::pi;
  switch (index % 9) {
    case 0: return random_density(rng);
    case 1: return random_density(rng, 2);
    case 2: return random_pure(rng);
    case 3: return random_product(rng);
    case 4:
      return max_entangled(uniform(rng, 0, 1), uniform(rng, 0, two_pi), uniform(rng, 0, two_pi));
    case 5: {
      const Anchor anchors[] = {Anchor::a, Anchor::s, Anchor::plus, Anchor::minus};
      return werner_state(uniform(rng, 0, 1), anchors[std::uniform_int_distribution<int>(0, 3)(rng)]);
    }
    case 6: {
      double w[4];
      double sum = 0;
      for (double& x : w) sum += (x = -std::log(uniform(rng, 1e-12, 1.0)));
      return bell_diagonal(w[0] / sum, w[1] / sum, w[2] / sum, 1.0 - (w[0] + w[1] + w[2]) / sum);
    }
    case 7: return random_x_state(rng).density();
    default: return pure_phi(uniform(rng, 0, std::numbers::pi));
  }
}

/// gamma0 = 1, gamma in [0, 1], Omega in [-3, 3], omega0 in [0, 2].
inline SystemParams random_params(Rng& rng) {
  return SystemParams::make(uniform(rng, 0, 2), uniform(rng, -3, 3), 1.0, uniform(rng, 0, 1));
}

}  // namespace twoatom
