#pragma once

// Master equation d rho/dt = -i[H, rho] + L_N rho for two atoms in a
// maximally noisy (infinite temperature) Markovian bath with collective
// damping, plus a fixed-step RK4 integrator and an independent backend that
// integrates the collective-basis matrix elements directly.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "twoatom/entanglement.hpp"
#include "twoatom/errors.hpp"
#include "twoatom/qstate.hpp"

namespace twoatom {

namespace detail {

struct AtomOperators {
  std::array<Matrix4, 2> raise;  // sigma_+ on atom A, B
  std::array<Matrix4, 2> lower;
  std::array<Matrix4, 2> z;
};

inline const AtomOperators& atom_operators() {
  static const AtomOperators ops = [] {
    const Matrix2 id = pauli::identity();
    AtomOperators o;
    o.raise = {kron(pauli::raising(), id), kron(id, pauli::raising())};
    o.lower = {kron(pauli::lowering(), id), kron(id, pauli::lowering())};
    o.z = {kron(pauli::z(), id), kron(id, pauli::z())};
    return o;
  }();
  return ops;
}

}  // namespace detail

/// H = omega0 (s3_A + s3_B) + Omega (s+_A s-_B + s+_B s-_A)
inline Matrix4 hamiltonian(const SystemParams& p) {
  const auto& op = detail::atom_operators();
  return p.omega0 * (op.z[0] + op.z[1]) +
         p.omega * (op.raise[0] * op.lower[1] + op.raise[1] * op.lower[0]);
}

/// Noise generator with Gamma_AA = Gamma_BB = gamma0 and Gamma_AB = Gamma_BA = gamma.
inline Matrix4 noise_generator(const Matrix4& rho, const SystemParams& p) {
  const auto& op = detail::atom_operators();
  Matrix4 out = Matrix4::Zero();
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      const double rate = (j == k) ? p.gamma0 : p.gamma;
      if (rate == 0.0) continue;
      const Matrix4& pj = op.raise[j];
      const Matrix4& mj = op.lower[j];
      const Matrix4& pk = op.raise[k];
      const Matrix4& mk = op.lower[k];
      const Matrix4 down = mj * pk;
      const Matrix4 up = pj * mk;
      out += 0.5 * rate *
             (2.0 * pj * rho * mk - down * rho - rho * down + 2.0 * mj * rho * pk - up * rho -
              rho * up);
    }
  }
  return out;
}

/// d rho / dt for an arbitrary (not necessarily valid) 4x4 matrix.
inline Matrix4 lindblad_rhs(const Matrix4& rho, const SystemParams& p) {
  const Matrix4 h = hamiltonian(p);
  return -kI * (h * rho - rho * h) + noise_generator(rho, p);
}

inline Matrix4 lindblad_rhs(const DensityMatrix& rho, const SystemParams& p) {
  return lindblad_rhs(rho.matrix(), p);
}

/// max-norm of L_N(I_4); zero for a unital generator.
inline double verify_unital(const SystemParams& p) {
  return noise_generator(Matrix4::Identity(), p).cwiseAbs().maxCoeff();
}

using Liouvillian = Eigen::Matrix<cplx, 16, 16>;
using VecState = Eigen::Matrix<cplx, 16, 1>;

/// Superoperator of lindblad_rhs acting on column-major vec(rho).
inline Liouvillian liouvillian(const SystemParams& p) {
  Liouvillian l;
  for (int c = 0; c < 16; ++c) {
    Matrix4 basis = Matrix4::Zero();
    basis(c % 4, c / 4) = 1.0;
    const Matrix4 image = lindblad_rhs(basis, p);
    l.col(c) = Eigen::Map<const VecState>(image.data());
  }
  return l;
}

/// Time derivatives of the collective-basis elements.
///
/// The ae, se and sg lines use the coefficients generated by lindblad_rhs:
/// the ae equation couples to rho_ga, and omega0 enters se/sg with 2i omega0.
inline CollectiveElements collective_rhs(const CollectiveElements& c, const SystemParams& p) {
  const double g0 = p.gamma0;
  const double g = p.gamma;
  const double w0 = p.omega0;
  const double om = p.omega;
  const double enhanced = g0 + g;
  const double reduced = g0 - g;

  CollectiveElements d;
  d.aa = -reduced * (2 * c.aa - c.gg - c.ee);
  d.ss = -enhanced * (2 * c.ss - c.gg - c.ee);
  d.ee = -2 * g0 * c.ee + enhanced * c.ss + reduced * c.aa;
  d.gg = -2 * g0 * c.gg + enhanced * c.ss + reduced * c.aa;
  d.eg = -(2 * g0 + 4.0 * kI * w0) * c.eg;
  d.as_ = -(2 * g0 - 2.0 * kI * om) * c.as_;
  d.ae = -reduced * std::conj(c.ag) + ((g + kI * om) - 2.0 * (g0 - kI * w0)) * c.ae;
  d.ag = -reduced * std::conj(c.ae) + ((g + kI * om) - 2.0 * (g0 + kI * w0)) * c.ag;
  d.se = enhanced * std::conj(c.sg) - ((g + kI * om) + 2.0 * (g0 - kI * w0)) * c.se;
  d.sg = enhanced * std::conj(c.se) - ((g + kI * om) + 2.0 * (g0 + kI * w0)) * c.sg;
  return d;
}

/// One classical fourth-order Runge-Kutta step for an autonomous system.
template <class State, class Rhs>
State rk4_step(Rhs&& f, const State& y, double h) {
  const State k1 = f(y);
  const State k2 = f(State(y + (0.5 * h) * k1));
  const State k3 = f(State(y + (0.5 * h) * k2));
  const State k4 = f(State(y + h * k3));
  return State(y + (h / 6.0) * State(k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

struct IntegratorConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  int sample_every = 1;

  /// Largest admissible step: 0.01 / max(gamma0, omega0, |Omega|).
  static double max_step(const SystemParams& p) {
    return 0.01 / std::max({p.gamma0, p.omega0, std::abs(p.omega)});
  }

  static IntegratorConfig make(double dt, double t_end, int sample_every, const SystemParams& p) {
    if (!(dt > 0.0) || !std::isfinite(dt))
      throw Error(ErrorKind::InvalidConfig, "dt must be positive");
    if (!(t_end > 0.0) || !std::isfinite(t_end))
      throw Error(ErrorKind::InvalidConfig, "t_end must be positive");
    if (sample_every < 1) throw Error(ErrorKind::InvalidConfig, "sample_every must be >= 1");
    const double limit = max_step(p);
    if (dt > limit * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "dt = " << dt << " exceeds stability bound " << limit;
      throw Error(ErrorKind::StepTooLarge, msg.str(), dt - limit);
    }
    return IntegratorConfig{dt, t_end, sample_every};
  }

  /// Steps actually taken; the step is shrunk so that they land on t_end.
  long steps() const { return std::max(1L, static_cast<long>(std::ceil(t_end / dt - 1e-9))); }
  double step() const { return t_end / static_cast<double>(steps()); }
};

struct Sample {
  double t;
  DensityMatrix rho;
  double concurrence;
  double fidelity;
  double purity;
};

struct Trajectory {
  SystemParams params;
  std::vector<Sample> samples;
  double max_hermiticity_defect = 0.0;  // before re-symmetrisation
  double max_trace_drift = 0.0;
};

inline Sample make_sample(double t, const DensityMatrix& rho) {
  return Sample{t, rho, concurrence(rho), fidelity_singlet(rho), purity(rho)};
}

namespace detail {

inline constexpr double kDriftPerUnitTime = 1e-8;

/// Shared sampling loop. The backend converts between its state type and a
/// canonical-basis matrix.
template <class State, class Rhs, class ToMatrix, class FromMatrix>
Trajectory integrate(const DensityMatrix& rho0, const SystemParams& p, const IntegratorConfig& cfg,
                     Rhs&& rhs, ToMatrix&& to_matrix, FromMatrix&& from_matrix) {
  Trajectory traj{p, {}, 0.0, 0.0};
  const long n = cfg.steps();
  const double h = cfg.step();
  traj.samples.reserve(static_cast<std::size_t>(n / cfg.sample_every + 2));
  traj.samples.push_back(make_sample(0.0, rho0));

  State y = from_matrix(rho0.matrix());
  for (long k = 1; k <= n; ++k) {
    y = rk4_step<State>(rhs, y, h);
    if (k % cfg.sample_every != 0 && k != n) continue;

    const double t = static_cast<double>(k) * h;
    const double budget = kDriftPerUnitTime * std::max(1.0, t);
    const Matrix4 raw = to_matrix(y);
    const double herm = (raw - raw.adjoint()).cwiseAbs().maxCoeff();
    const Matrix4 sym = 0.5 * (raw + raw.adjoint());
    const cplx tr = sym.trace();
    const double drift = std::abs(tr - 1.0);
    traj.max_hermiticity_defect = std::max(traj.max_hermiticity_defect, herm);
    traj.max_trace_drift = std::max(traj.max_trace_drift, drift);
    if (!raw.allFinite() || herm > budget || drift > budget) {
      std::ostringstream msg;
      msg << "integration diverged at t = " << t << " (hermiticity " << herm << ", trace drift "
          << drift << ")";
      throw Error(ErrorKind::StepTooLarge, msg.str(), std::max(herm, drift));
    }
    y = from_matrix(sym);
    try {
      traj.samples.push_back(make_sample(t, DensityMatrix::make(sym / tr.real())));
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "invalid state at t = " << t << ": " << e.what();
      throw Error(ErrorKind::StepTooLarge, msg.str(), e.residual());
    }
  }
  return traj;
}

}  // namespace detail

/// RK4 on the full matrix equation.
inline Trajectory evolve_numeric(const DensityMatrix& rho0, const SystemParams& p,
                                 const IntegratorConfig& cfg) {
  const Liouvillian l = liouvillian(p);
  return detail::integrate<VecState>(
      rho0, p, cfg, [&l](const VecState& v) -> VecState { return l * v; },
      [](const VecState& v) -> Matrix4 { return Eigen::Map<const Matrix4>(v.data()); },
      [](const Matrix4& m) -> VecState { return Eigen::Map<const VecState>(m.data()); });
}

/// RK4 on the ten collective-basis elements.
inline Trajectory evolve_collective(const DensityMatrix& rho0, const SystemParams& p,
                                    const IntegratorConfig& cfg) {
  return detail::integrate<CollectiveElements>(
      rho0, p, cfg, [&p](const CollectiveElements& c) { return collective_rhs(c, p); },
      [](const CollectiveElements& c) { return matrix_from_collective(c); },
      [](const Matrix4& m) { return collective_from_matrix(m); });
}

}  // namespace twoatom
