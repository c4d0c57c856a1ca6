// twoatom: evolve, classify and tabulate two-atom states in a maximally noisy
// environment with collective damping.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "twoatom/cli.hpp"

namespace {

struct Flags {
  std::string state;
  double gamma = 1.0;
  double omega = 0.0;
  std::vector<double> omegas{1.0, 3.0};
  double omega0 = 0.0;
  double dt = 1e-3;
  double t_end = -1.0;
  int sample_every = 10;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 42;
  int cases = 100;
  int grid_a = 101;
  int grid_theta = 101;
  bool inject_fault = false;
};

void add_physics(CLI::App* cmd, Flags& f, bool omega_list) {
  cmd->add_option("--gamma", f.gamma, "collective damping rate Gamma/Gamma0")->capture_default_str();
  if (omega_list)
    cmd->add_option("--omega", f.omegas, "dipole-dipole coupling Omega/Gamma0 (repeatable)")
        ->capture_default_str();
  else
    cmd->add_option("--omega", f.omega, "dipole-dipole coupling Omega/Gamma0")->capture_default_str();
  cmd->add_option("--omega0", f.omega0, "transition frequency omega0/Gamma0")->capture_default_str();
  cmd->add_option("--dt", f.dt, "RK4 step in units of 1/Gamma0")->capture_default_str();
  cmd->add_option("--t-end", f.t_end, "final time in units of 1/Gamma0");
  cmd->add_option("--sample-every", f.sample_every, "store every n-th step")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-atom open-system dynamics with collective damping"};
  app.require_subcommand(1);
  Flags f;

  auto* evolve = app.add_subcommand("evolve", "integrate the master equation and write a trajectory");
  evolve->add_option("--state", f.state, "initial state descriptor")->required();
  add_physics(evolve, f, false);
  evolve->add_option("--format", f.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  auto* classify = app.add_subcommand("classify", "classify the asymptotic state (gamma = gamma0)");
  classify->add_option("--state", f.state, "initial state descriptor")->required();

  auto* surface = app.add_subcommand("surface", "fidelity of maximally entangled states on an (a, theta) grid");
  surface->add_option("--grid-a", f.grid_a, "points in a")->capture_default_str();
  surface->add_option("--grid-theta", f.grid_theta, "points in theta")->capture_default_str();

  auto* trace = app.add_subcommand("trace", "X-state concurrence: closed form vs integrator");
  trace->add_option("--state", f.state, "X-form initial state descriptor")->required();
  add_physics(trace, f, true);

  auto* verify = app.add_subcommand("verify", "run the oracle suites");
  verify->add_option("--seed", f.seed, "random seed")->capture_default_str();
  verify->add_option("--cases", f.cases, "random cases per suite")->capture_default_str();
  verify->add_flag("--inject-fault", f.inject_fault, "perturb the integrator (harness self-test)");

  for (auto* cmd : {evolve, classify, surface, trace, verify})
    cmd->add_option("--out", f.out, "output file (default: standard output)");

  CLI11_PARSE(app, argc, argv);

  twoatom::RunSpec spec;
  spec.state_spec = f.state;
  spec.dt = f.dt;
  spec.sample_every = f.sample_every;
  spec.output_path = f.out;
  spec.format = f.format == "json" ? twoatom::Format::json : twoatom::Format::csv;
  spec.grid_a = f.grid_a;
  spec.grid_theta = f.grid_theta;
  spec.omegas = f.omegas;
  spec.seed = f.seed;
  spec.cases = f.cases;
  spec.inject_fault = f.inject_fault;

  if (evolve->parsed()) {
    spec.command = twoatom::Command::evolve;
    spec.t_end = f.t_end > 0 ? f.t_end : 20.0;
  } else if (classify->parsed()) {
    spec.command = twoatom::Command::classify;
  } else if (surface->parsed()) {
    spec.command = twoatom::Command::surface;
  } else if (trace->parsed()) {
    spec.command = twoatom::Command::trace;
    spec.t_end = f.t_end > 0 ? f.t_end : 4.0;
  } else {
    spec.command = twoatom::Command::verify;
  }

  try {
    spec.params = twoatom::SystemParams::make(f.omega0, f.omega, 1.0, f.gamma);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return twoatom::run(spec, std::cout, std::cerr);
}
