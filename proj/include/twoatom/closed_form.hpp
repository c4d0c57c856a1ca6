#pragma once

// Analytic results for the gamma == gamma0 regime.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string_view>

#include "twoatom/entanglement.hpp"
#include "twoatom/errors.hpp"
#include "twoatom/qstate.hpp"

namespace twoatom {

struct Populations {
  double aa, ss, ee, gg;
};

/// Collective-basis populations at time t. aa is conserved; the rest relax as
/// combinations of e^{-6 gamma0 t} and e^{-2 gamma0 t}.
inline Populations populations_closed(const CollectiveElements& init, double t,
                                      double gamma0 = 1.0) {
  if (!(t >= 0.0)) throw Error(ErrorKind::OutOfRange, "t must be >= 0");
  const double e6 = std::exp(-6.0 * gamma0 * t);
  const double e2 = std::exp(-2.0 * gamma0 * t);
  const double aa0 = init.aa;
  const double ss0 = init.ss;
  const double base = (1.0 - aa0) / 3.0;
  Populations out;
  out.aa = aa0;
  out.ss = base + e6 * (aa0 + 3.0 * ss0 - 1.0) / 3.0;
  out.ee = base + e6 * (1.0 - aa0 - 3.0 * ss0) / 6.0 + e2 * (aa0 + ss0 + 2.0 * init.ee - 1.0) / 2.0;
  out.gg = base + e6 * (1.0 - aa0 - 3.0 * ss0) / 6.0 + e2 * (aa0 + ss0 + 2.0 * init.gg - 1.0) / 2.0;
  return out;
}

/// Stationary state reached from any initial state with singlet fidelity F.
inline DensityMatrix asymptotic_state(double fidelity) {
  require_in_range(fidelity, 0.0, 1.0, "F");
  const double outer = (1.0 - fidelity) / 3.0;
  const double inner = (1.0 + 2.0 * fidelity) / 6.0;
  const double coherence = (1.0 - 4.0 * fidelity) / 6.0;
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = m(3, 3) = outer;
  m(1, 1) = m(2, 2) = inner;
  m(1, 2) = m(2, 1) = coherence;
  return DensityMatrix::make(m);
}

/// Separable asymptote written as a deformation of I/4 with strength p.
inline DensityMatrix separable_asymptote(double p) {
  require_in_range(p, 0.0, 1.0, "p");
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = m(3, 3) = 1.0 + p / 3.0;
  m(1, 1) = m(2, 2) = 1.0 - p / 3.0;
  m(1, 2) = m(2, 1) = 2.0 * p / 3.0;
  return DensityMatrix::make(m / 4.0);
}

enum class AsymptoticKind { SeparableMixture, MaximallyMixed, WernerSinglet };

inline std::string_view to_string(AsymptoticKind kind) {
  switch (kind) {
    case AsymptoticKind::SeparableMixture: return "SeparableMixture";
    case AsymptoticKind::MaximallyMixed: return "MaximallyMixed";
    case AsymptoticKind::WernerSinglet: return "WernerSinglet";
  }
  return "?";
}

struct AsymptoticClass {
  double fidelity;
  AsymptoticKind kind;
  double p;  // mixing parameter; 0 for MaximallyMixed
  double concurrence;
};

inline constexpr double kQuarterTol = 1e-12;

/// Three-way split of the asymptote at F = 1/4. Entanglement of the Werner
/// branch is max(0, 2F - 1), so it is separable on (1/4, 1/2].
inline AsymptoticClass classify_asymptotic(double fidelity) {
  require_in_range(fidelity, 0.0, 1.0, "F");
  const double concurrence = std::max(0.0, 2.0 * fidelity - 1.0);
  if (std::abs(fidelity - 0.25) <= kQuarterTol)
    return {fidelity, AsymptoticKind::MaximallyMixed, 0.0, concurrence};
  if (fidelity < 0.25)
    return {fidelity, AsymptoticKind::SeparableMixture, 1.0 - 4.0 * fidelity, concurrence};
  return {fidelity, AsymptoticKind::WernerSinglet, (4.0 * fidelity - 1.0) / 3.0, concurrence};
}

/// Rebuilds rho_infinity from its classification.
inline DensityMatrix asymptotic_from_class(const AsymptoticClass& c) {
  switch (c.kind) {
    case AsymptoticKind::SeparableMixture: return separable_asymptote(c.p);
    case AsymptoticKind::MaximallyMixed: return DensityMatrix::maximally_mixed();
    case AsymptoticKind::WernerSinglet: return werner_state(c.p, Anchor::a);
  }
  return DensityMatrix::maximally_mixed();
}

/// Singlet fidelity of |psi (x) phi> given |<psi|phi>|^2.
inline double fidelity_product(double overlap_sq) {
  require_in_range(overlap_sq, 0.0, 1.0, "|<psi|phi>|^2");
  return 0.5 * (1.0 - overlap_sq);
}

/// Singlet fidelity of max_entangled(a, t1, t2) with theta = t1 - t2.
inline double fidelity_max_entangled(double a, double theta) {
  require_in_range(a, 0.0, 1.0, "a");
  if (!std::isfinite(theta)) throw Error(ErrorKind::OutOfRange, "theta must be finite");
  return 0.5 * (1.0 - a * a) * (1.0 - std::cos(theta));
}

namespace detail {
inline void check_region_args(double a, double theta) {
  if (a == 1.0)
    throw Error(ErrorKind::DegenerateAt, "a = 1 makes a^2/(a^2 - 1) singular");
  require_in_range(a, 0.0, 1.0, "a");
  require_in_range(theta, 0.0, 2 * std::numbers::pi, "theta");
}
}  // namespace detail

/// Membership in the set of (a, theta) whose maximally entangled states keep
/// entanglement asymptotically, i.e. F > 1/2.
inline bool region_E_contains(double a, double theta) {
  detail::check_region_args(a, theta);
  return fidelity_max_entangled(a, theta) > 0.5;
}

/// The same set written as an explicit theta window for a <= 1/sqrt2.
inline bool region_E_contains_arccos(double a, double theta) {
  detail::check_region_args(a, theta);
  if (a > 1.0 / std::numbers::sqrt2) return false;
  const double a2 = a * a;
  const double edge = std::acos(std::clamp(a2 / (a2 - 1.0), -1.0, 1.0));
  return edge < theta && theta < 2 * std::numbers::pi - edge;
}

/// theta at which fidelity_max_entangled(a, theta) == 1/4.
inline double quarter_curve_theta(double a) {
  constexpr double a_max = 0.86602540378443864676;  // sqrt(3)/2
  if (!(a >= 0.0 && a <= a_max + 1e-15))
    throw Error(ErrorKind::OutOfRange, "a must lie in [0, sqrt(3)/2]");
  const double a2 = a * a;
  return std::acos(std::clamp((2.0 * a2 - 1.0) / (2.0 * (a2 - 1.0)), -1.0, 1.0));
}

/// Free parameters of a real state on the central (f2, f3) block.
struct XStateInit {
  double r22;
  double r33;
  double r23;

  static XStateInit make(double r22, double r33, double r23) {
    x_initial(r22, r33, r23);  // validates
    return XStateInit{r22, r33, r23};
  }

  /// Extracts the parameters; throws NotXForm if rho has weight outside the block.
  static XStateInit from_density(const DensityMatrix& rho, double tol = 1e-12) {
    const auto& m = rho.matrix();
    double defect = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const bool inner = (i == 1 || i == 2) && (j == 1 || j == 2);
        defect = std::max(defect, inner ? std::abs(m(i, j).imag()) : std::abs(m(i, j)));
      }
    if (defect > tol) {
      std::ostringstream msg;
      msg << "state is not a real central-block X state (defect " << defect << ")";
      throw Error(ErrorKind::NotXForm, msg.str(), defect);
    }
    return XStateInit{m(1, 1).real(), m(2, 2).real(), m(1, 2).real()};
  }

  DensityMatrix density() const { return x_initial(r22, r33, r23); }
  double fidelity() const { return 0.5 * (1.0 - 2.0 * r23); }
};

/// Exact state at time t for an X-state initial condition (gamma == gamma0).
///
/// The imaginary part of rho_23(t) is +(1/2) e^{-2 gamma0 t} sin(2 Omega t)
/// (r22 - r33) for the Hamiltonian sign convention used by lindblad_rhs.
inline DensityMatrix x_state_trajectory(const XStateInit& init, double omega, double t,
                                        double gamma0 = 1.0) {
  if (!(t >= 0.0)) throw Error(ErrorKind::OutOfRange, "t must be >= 0");
  const double e6 = std::exp(-6.0 * gamma0 * t);
  const double e2 = std::exp(-2.0 * gamma0 * t);
  const double r23 = init.r23;
  const double diff = init.r22 - init.r33;
  const double corner = (1.0 + 2.0 * r23) / 6.0 * (1.0 - e6);
  const double centre = (1.0 - r23) / 3.0 + e6 * (1.0 + 2.0 * r23) / 6.0;
  const double swing = 0.5 * e2 * std::cos(2.0 * omega * t) * diff;

  Matrix4 m = Matrix4::Zero();
  m(0, 0) = m(3, 3) = corner;
  m(1, 1) = centre + swing;
  m(2, 2) = centre - swing;
  m(1, 2) = cplx((4.0 * r23 - 1.0) / 6.0 + e6 * (1.0 + 2.0 * r23) / 6.0,
                 0.5 * e2 * std::sin(2.0 * omega * t) * diff);
  m(2, 1) = std::conj(m(1, 2));
  return DensityMatrix::make(m);
}

/// C(t) = max(0, 2 sqrt(A^2 + B^2 sin^2(2 Omega t)) - 2 rho_11(t)).
inline double x_state_concurrence(const XStateInit& init, double omega, double t,
                                  double gamma0 = 1.0) {
  if (!(t >= 0.0)) throw Error(ErrorKind::OutOfRange, "t must be >= 0");
  const double e6 = std::exp(-6.0 * gamma0 * t);
  const double e2 = std::exp(-2.0 * gamma0 * t);
  const double r23 = init.r23;
  const double a = (4.0 * r23 - 1.0 + e6 * (1.0 + 2.0 * r23)) / 6.0;
  const double b = 0.5 * e2 * (init.r22 - init.r33);
  const double s = std::sin(2.0 * omega * t);
  const double rho11 = (1.0 + 2.0 * r23) / 6.0 * (1.0 - e6);
  return std::max(0.0, 2.0 * std::sqrt(a * a + b * b * s * s) - 2.0 * rho11);
}

}  // namespace twoatom
