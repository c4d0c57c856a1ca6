#pragma once

// Oracle suites run by `twoatom verify`: each compares two independent routes
// to the same quantity over seeded random cases and reports the worst residual.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "twoatom/closed_form.hpp"
#include "twoatom/dynamics.hpp"
#include "twoatom/entanglement.hpp"
#include "twoatom/random.hpp"

namespace twoatom {

struct SuiteResult {
  std::string name;
  double max_residual;
  double tolerance;
  bool passed() const { return max_residual <= tolerance; }
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  int cases = 100;
  /// Test hook: perturbs the collective rate fed to the numerical integrator.
  bool inject_fault = false;
};

namespace detail {

inline SystemParams numeric_params(SystemParams p, const VerifyOptions& opt) {
  if (opt.inject_fault) p.gamma *= 1.0 - 1e-3;
  return p;
}

inline IntegratorConfig verify_config(double t_end, int sample_every, const SystemParams& p) {
  return IntegratorConfig::make(std::min(1e-3, IntegratorConfig::max_step(p)), t_end, sample_every,
                                p);
}

}  // namespace detail

/// Runs all suites; never throws on a residual failure, only on invalid input.
inline std::vector<SuiteResult> run_verification(const VerifyOptions& opt) {
  Rng rng(opt.seed);
  const int n = std::max(1, opt.cases);

  SuiteResult closed{"closed_form_vs_numeric", 0.0, 1e-8};
  SuiteResult conserved{"fidelity_conservation", 0.0, 1e-9};
  for (int k = 0; k < n; ++k) {
    const SystemParams p = SystemParams::make(uniform(rng, 0, 2), uniform(rng, 0, 3), 1.0, 1.0);
    const auto cfg = detail::verify_config(5.0, 100, p);

    const DensityMatrix rho0 = random_family_state(rng, k);
    const auto init = to_collective(rho0);
    const double f0 = fidelity_singlet(rho0);
    for (const Sample& s : evolve_numeric(rho0, detail::numeric_params(p, opt), cfg).samples) {
      const auto c = to_collective(s.rho);
      const Populations q = populations_closed(init, s.t, p.gamma0);
      closed.max_residual = std::max({closed.max_residual, std::abs(c.aa - q.aa),
                                      std::abs(c.ss - q.ss), std::abs(c.ee - q.ee),
                                      std::abs(c.gg - q.gg)});
      conserved.max_residual = std::max(conserved.max_residual, std::abs(s.fidelity - f0));
    }

    const XStateInit x = random_x_state(rng);
    for (const Sample& s : evolve_numeric(x.density(), detail::numeric_params(p, opt), cfg).samples) {
      const Matrix4 exact = x_state_trajectory(x, p.omega, s.t, p.gamma0).matrix();
      closed.max_residual =
          std::max(closed.max_residual, (exact - s.rho.matrix()).cwiseAbs().maxCoeff());
    }
  }

  SuiteResult unital{"unitality", 0.0, 1e-14};
  for (int k = 0; k < n; ++k)
    unital.max_residual = std::max(unital.max_residual, verify_unital(random_params(rng)));

  SuiteResult formulas{"concurrence_formulas", 0.0, 1e-9};
  for (int k = 0; k < std::max(n, 9); ++k) {
    const DensityMatrix rho = random_family_state(rng, k);
    formulas.max_residual =
        std::max(formulas.max_residual, std::abs(concurrence(rho) - concurrence_sqrt_form(rho)));
  }

  SuiteResult asymptote{"asymptotic_convergence", 0.0, 1e-6};
  for (int k = 0; k < n; ++k) {
    const SystemParams p = SystemParams::make(0.0, uniform(rng, 0, 3), 1.0, 1.0);
    const DensityMatrix rho0 = random_family_state(rng, k);
    const auto cfg = detail::verify_config(20.0, 20000, p);
    const auto traj = evolve_numeric(rho0, detail::numeric_params(p, opt), cfg);
    const Matrix4 target = asymptotic_state(std::clamp(fidelity_singlet(rho0), 0.0, 1.0)).matrix();
    asymptote.max_residual = std::max(
        asymptote.max_residual, (traj.samples.back().rho.matrix() - target).cwiseAbs().maxCoeff());
  }

  return {closed, conserved, unital, formulas, asymptote};
}

}  // namespace twoatom
