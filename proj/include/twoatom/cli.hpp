#pragma once

// Command implementations behind the `twoatom` executable. Each command writes
// its data to `data` and human-readable messages to `console`, and returns a
// process exit code.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "twoatom/closed_form.hpp"
#include "twoatom/dynamics.hpp"
#include "twoatom/entanglement.hpp"
#include "twoatom/errors.hpp"
#include "twoatom/io.hpp"
#include "twoatom/verify.hpp"

namespace twoatom {

enum class Command { evolve, classify, surface, trace, verify };
enum class Format { csv, json };

struct RunSpec {
  Command command = Command::evolve;
  std::string state_spec;
  SystemParams params;
  double dt = 1e-3;
  double t_end = 20.0;
  int sample_every = 10;
  std::string output_path;  // empty: standard output
  Format format = Format::csv;

  int grid_a = 101;
  int grid_theta = 101;
  std::vector<double> omegas{1.0, 3.0};  // trace only
  std::uint64_t seed = 42;
  int cases = 100;
  bool inject_fault = false;
};

inline IntegratorConfig integrator_config(const RunSpec& spec, const SystemParams& p) {
  return IntegratorConfig::make(spec.dt, spec.t_end, spec.sample_every, p);
}

inline int cmd_evolve(const RunSpec& spec, std::ostream& data, std::ostream& console) {
  const DensityMatrix rho0 = parse_state_spec(spec.state_spec);
  const Trajectory traj = evolve_numeric(rho0, spec.params, integrator_config(spec, spec.params));
  if (spec.format == Format::json)
    data << trajectory_to_json(traj).dump(2) << '\n';
  else
    write_trajectory_csv(data, traj);

  const Sample& last = traj.samples.back();
  console << "t=" << format_number(last.t) << " F=" << format_number(last.fidelity)
          << " C=" << format_number(last.concurrence) << " purity=" << format_number(last.purity);
  if (spec.params.gamma == spec.params.gamma0)
    console << " asymptote=" << to_string(classify_asymptotic(std::clamp(last.fidelity, 0.0, 1.0)).kind);
  console << '\n';
  return 0;
}

inline int cmd_classify(const RunSpec& spec, std::ostream& data) {
  const DensityMatrix rho = parse_state_spec(spec.state_spec);
  const AsymptoticClass c = classify_asymptotic(std::clamp(fidelity_singlet(rho), 0.0, 1.0));
  data << classification_to_json(c).dump(2) << '\n';
  return 0;
}

/// Grid over a in [0, 1] and theta in [0, 2 pi]. The quarter-curve flag marks
/// the grid point nearest to either branch theta_q(a), 2 pi - theta_q(a).
inline int cmd_surface(const RunSpec& spec, std::ostream& data) {
  if (spec.grid_a < 2 || spec.grid_theta < 2)
    throw Error(ErrorKind::InvalidConfig, "grid sizes must be >= 2");
  constexpr double two_pi = 2 * std::numbers::pi;
  constexpr double a_curve_max = 0.86602540378443864676;
  const double dtheta = two_pi / (spec.grid_theta - 1);
  data << "a,theta,F,in_region_E,on_quarter_curve\n";
  for (int i = 0; i < spec.grid_a; ++i) {
    const double a = static_cast<double>(i) / (spec.grid_a - 1);
    for (int j = 0; j < spec.grid_theta; ++j) {
      const double theta = std::min(j * dtheta, two_pi);
      const double f = fidelity_max_entangled(a, theta);
      const bool in_e = a < 1.0 && region_E_contains(a, theta);
      bool on_curve = false;
      if (a <= a_curve_max) {
        const double tq = quarter_curve_theta(a);
        on_curve = std::abs(theta - tq) <= 0.5 * dtheta ||
                   std::abs(theta - (two_pi - tq)) <= 0.5 * dtheta;
      }
      data << format_number(a) << ',' << format_number(theta) << ',' << format_number(f) << ','
           << (in_e ? "true" : "false") << ',' << (on_curve ? "true" : "false") << '\n';
    }
  }
  return 0;
}

/// Concurrence of an X-state along gamma == gamma0 trajectories, from the
/// closed form and from the integrator, for each requested Omega.
inline int cmd_trace(const RunSpec& spec, std::ostream& data, std::ostream& console) {
  const XStateInit init = XStateInit::from_density(parse_state_spec(spec.state_spec));
  if (spec.params.gamma != spec.params.gamma0)
    throw Error(ErrorKind::InvalidParams, "trace requires gamma == gamma0");
  if (spec.omegas.empty()) throw Error(ErrorKind::InvalidConfig, "no Omega values given");
  data << "omega,t,C_closed_form,C_numeric\n";
  double worst = 0;
  for (const double omega : spec.omegas) {
    SystemParams p = spec.params;
    p.omega = omega;
    const Trajectory traj = evolve_numeric(init.density(), p, integrator_config(spec, p));
    for (const Sample& s : traj.samples) {
      const double closed = x_state_concurrence(init, omega, s.t, p.gamma0);
      worst = std::max(worst, std::abs(closed - s.concurrence));
      data << format_number(omega) << ',' << format_number(s.t) << ',' << format_number(closed)
           << ',' << format_number(s.concurrence) << '\n';
    }
  }
  console << "max |C_closed_form - C_numeric| = " << format_number(worst) << '\n';
  return 0;
}

inline int cmd_verify(const RunSpec& spec, std::ostream& console) {
  const auto results = run_verification({spec.seed, spec.cases, spec.inject_fault});
  const SuiteResult* first_failure = nullptr;
  for (const SuiteResult& r : results) {
    console << r.name << ": max residual " << format_number(r.max_residual) << " (tolerance "
            << r.tolerance << ") " << (r.passed() ? "ok" : "FAILED") << '\n';
    if (!r.passed() && first_failure == nullptr) first_failure = &r;
  }
  if (first_failure != nullptr) {
    console << "verification failed: " << first_failure->name << '\n';
    return 1;
  }
  return 0;
}

/// Dispatches a command, routing data to `output_path` when one is set.
/// Errors become a message on `err` and exit code 1.
inline int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    std::ofstream file;
    if (!spec.output_path.empty()) {
      file.open(spec.output_path);
      if (!file) throw Error(ErrorKind::Io, "cannot open " + spec.output_path);
    }
    std::ostream& data = spec.output_path.empty() ? out : file;
    std::ostream& console = spec.output_path.empty() ? err : out;
    int code = 0;
    switch (spec.command) {
      case Command::evolve: code = cmd_evolve(spec, data, console); break;
      case Command::classify: code = cmd_classify(spec, data); break;
      case Command::surface: code = cmd_surface(spec, data); break;
      case Command::trace: code = cmd_trace(spec, data, console); break;
      case Command::verify: code = cmd_verify(spec, out); break;
    }
    if (file.is_open()) {
      file.close();
      if (!file) throw Error(ErrorKind::Io, "failed writing " + spec.output_path);
    }
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace twoatom
