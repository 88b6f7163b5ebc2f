// Command-line driver for the 1-D CGL solver.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cgl/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"High-order AFD-WENO solver for the 1-D CGL plasma equations"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "run a simulation or convergence study");
  std::string config_path, problem, solver, tau_str, convergence_str, outdir;
  int order = 0, n = 0, dump_every = -1;
  double cfl = -1.0, t_end = -1.0;
  bool no_source = false, no_flattener = false;
  run->add_option("--config", config_path, "key=value config file");
  run->add_option("--problem", problem,
                  "accuracy|alfven|reconnection|rp1|rp2|rp3|rp4|rp5");
  run->add_option("--order", order, "scheme order: 3, 5 or 7");
  run->add_option("--solver", solver, "hll|hlli");
  run->add_option("--n", n, "zone count");
  run->add_option("--cfl", cfl, "Courant number");
  run->add_option("--tend", t_end, "final time override");
  run->add_option("--tau", tau_str, "relaxation time (enables the stiff source)");
  run->add_flag("--no-source", no_source, "disable the relaxation source");
  run->add_flag("--no-flattener", no_flattener, "disable the shock flattener");
  run->add_option("--out", outdir, "output directory");
  run->add_option("--dump-every", dump_every, "intermediate dump cadence (steps)");
  run->add_option("--convergence", convergence_str, "comma-separated mesh list");

  CLI11_PARSE(app, argc, argv);

  cgl::RunConfig cfg;
  try {
    if (!config_path.empty()) cgl::load_config_file(cfg, config_path);
    if (!problem.empty()) cfg.problem = cgl::parse_problem(problem);
    if (order > 0) cfg.order = order;
    if (!solver.empty()) cgl::apply_config_line(cfg, "solver", solver);
    if (n > 0) cfg.n = n;
    if (cfl >= 0.0) cfg.cfl = cfl;
    if (t_end >= 0.0) cfg.t_end = t_end;
    if (!tau_str.empty()) cgl::apply_config_line(cfg, "tau", tau_str);
    if (no_source) cfg.tau_mode = cgl::RunConfig::TauMode::Disabled;
    if (no_flattener) cfg.flattener = false;
    if (!outdir.empty()) cfg.outdir = outdir;
    if (dump_every >= 0) cfg.dump_every = dump_every;
    if (!convergence_str.empty())
      cgl::apply_config_line(cfg, "convergence", convergence_str);
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (!cfg.convergence.empty()) {
      const auto rows = cgl::convergence_table(cfg);
      std::cout << cgl::format_convergence_table(rows);
      return 0;
    }
    const cgl::RunResult r = cgl::run_simulation(cfg);
    std::printf("problem=%s order=%d solver=%s n=%d t=%.6f steps=%ld rhs_evals=%ld\n",
                cgl::problem_name(cfg.problem), cfg.order,
                cfg.solver == cgl::Solver::HLL ? "hll" : "hlli", r.grid.n,
                r.summary.t_final, r.summary.steps, r.summary.rhs_evals);
    std::printf("min_rho=%.6e max_rho=%.6e omega_exits=%ld wall=%.2fs\n",
                r.summary.min_rho, r.summary.max_rho, r.summary.omega_exits,
                r.summary.wall_seconds);
    return 0;
  } catch (const cgl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const cgl::UnknownProblem& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
