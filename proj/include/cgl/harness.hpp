#pragma once

// Batch driver: run configuration, the simulation loop, CSV field dumps,
// error norms, and the convergence-table harness.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cgl/errors.hpp"
#include "cgl/problems.hpp"
#include "cgl/reference.hpp"
#include "cgl/scheme.hpp"
#include "cgl/time_integrator.hpp"

namespace cgl {

struct RunConfig {
  ProblemId problem = ProblemId::Accuracy;
  int order = 5;
  Solver solver = Solver::HLL;
  int n = 0;             // 0 -> problem default
  double cfl = 0.0;      // 0 -> problem default
  double t_end = -1.0;   // <0 -> problem default
  enum class TauMode : std::uint8_t { Default, Disabled, Value };
  TauMode tau_mode = TauMode::Default;
  double tau_value = 1e-8;
  bool flattener = true;
  std::string outdir;    // empty -> no files written
  int dump_every = 0;
  std::vector<int> convergence;  // mesh list; empty -> single run

  std::optional<double> resolve_tau(const ProblemSpec& spec) const {
    switch (tau_mode) {
      case TauMode::Default: return spec.tau;
      case TauMode::Disabled: return std::nullopt;
      case TauMode::Value: return tau_value;
    }
    return std::nullopt;
  }

  void validate() const {
    if (order != 3 && order != 5 && order != 7)
      throw ConfigError("order must be 3, 5 or 7");
    if (n != 0 && n < 10) throw ConfigError("n must be >= 10");
    if (cfl < 0.0 || cfl > 1.0) throw ConfigError("cfl must be in (0, 1]");
    if (tau_mode == TauMode::Value && !(tau_value > 0.0))
      throw ConfigError("tau must be positive");
    for (int m : convergence)
      if (m < 10) throw ConfigError("convergence meshes must be >= 10");
  }
};

struct RunSummary {
  long steps = 0;
  long rhs_evals = 0;
  double min_rho = 0.0, max_rho = 0.0;
  long omega_exits = 0;
  RhsStats scheme_stats;
  double t_final = 0.0;
  double wall_seconds = 0.0;
};

struct RunResult {
  RunSummary summary;
  GridState grid;
  GlobalField field;
  ProblemSpec spec;
};

inline void write_fields_csv(const std::string& path, const GridState& grid,
                             const GlobalField& g) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file " + path);
  out << "x,rho,ux,uy,uz,p_par,p_perp,By,Bz,E,dp\n";
  out << std::setprecision(17);
  for (int i = 0; i < grid.n; ++i) {
    const ConsState& u = grid.z(i);
    const PrimState w = cons_to_prim(u, g);
    out << grid.xc(i) << ',' << w.rho << ',' << w.ux << ',' << w.uy << ',' << w.uz
        << ',' << w.p_par << ',' << w.p_perp << ',' << w.By << ',' << w.Bz << ','
        << u.E << ',' << u.dp << '\n';
  }
}

namespace detail {

inline std::string stamp(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", t);
  return buf;
}

}  // namespace detail

//! Advance one problem to t_end. fixed_dt (when set) bypasses the CFL
//! controller except for the final clip; used by the accuracy studies.
inline RunResult run_simulation(const RunConfig& cfg,
                                std::optional<double> fixed_dt = std::nullopt) {
  cfg.validate();
  ProblemSpec spec = problem_spec(cfg.problem);
  if (cfg.t_end >= 0.0) spec.t_end = cfg.t_end;
  if (cfg.cfl > 0.0) spec.cfl = cfg.cfl;
  const int n = cfg.n > 0 ? cfg.n : spec.default_n;
  const std::optional<double> tau = cfg.resolve_tau(spec);

  ProblemSetup setup = init_problem(spec, n);
  SchemeConfig scfg{cfg.order, cfg.solver, cfg.flattener};
  RunSummary sum;
  sum.min_rho = std::numeric_limits<double>::infinity();
  sum.max_rho = 0.0;

  const bool write_files = !cfg.outdir.empty();
  if (write_files) {
    std::filesystem::create_directories(cfg.outdir);
    write_fields_csv(cfg.outdir + "/fields_t" + detail::stamp(0.0) + ".csv",
                     setup.grid, setup.field);
  }

  double t = 0.0;
  const auto t0 = std::chrono::steady_clock::now();
  auto rhs = [&](GridState& gr) {
    apply_bc(gr, spec.bc);
    ++sum.rhs_evals;
    return semidiscrete_rhs(gr, scfg, setup.field, &sum.scheme_stats, t);
  };

  while (t < spec.t_end * (1.0 - 1e-14)) {
    StepControl ctl{spec.cfl, t, spec.t_end, DtRule::CFLOnly};
    double dt;
    if (fixed_dt) {
      dt = std::min(*fixed_dt, spec.t_end - t);
    } else {
      dt = compute_dt(setup.grid, ctl, setup.field);
    }
    if (!(dt > 0.0)) break;
    setup.grid = tau ? imex_rk3_step(setup.grid, dt, rhs, tau)
                     : ssprk3_step(setup.grid, dt, rhs);
    t += dt;
    ++sum.steps;
    for (int i = 0; i < setup.grid.n; ++i) {
      const PrimState w = cons_to_prim(setup.grid.z(i), setup.field);
      sum.min_rho = std::min(sum.min_rho, w.rho);
      sum.max_rho = std::max(sum.max_rho, w.rho);
      if (classify_omega(w, setup.field).region == OmegaRegion::Outside)
        ++sum.omega_exits;
    }
    if (write_files && cfg.dump_every > 0 && sum.steps % cfg.dump_every == 0 &&
        t < spec.t_end * (1.0 - 1e-14))
      write_fields_csv(cfg.outdir + "/fields_t" + detail::stamp(t) + ".csv",
                       setup.grid, setup.field);
  }
  sum.t_final = t;
  sum.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (write_files) {
    write_fields_csv(cfg.outdir + "/fields_t" + detail::stamp(t) + ".csv",
                     setup.grid, setup.field);
    std::ofstream s(cfg.outdir + "/summary.txt");
    s << "problem=" << problem_name(cfg.problem) << "\n"
      << "order=" << cfg.order << "\n"
      << "solver=" << (cfg.solver == Solver::HLL ? "hll" : "hlli") << "\n"
      << "n=" << n << "\n"
      << "t_final=" << std::setprecision(17) << t << "\n"
      << "steps=" << sum.steps << "\n"
      << "rhs_evals=" << sum.rhs_evals << "\n"
      << "min_rho=" << sum.min_rho << "\n"
      << "max_rho=" << sum.max_rho << "\n"
      << "omega_exits=" << sum.omega_exits << "\n"
      << "face_value_fallbacks=" << sum.scheme_stats.face_value_fallbacks << "\n"
      << "componentwise_zones=" << sum.scheme_stats.componentwise_zones << "\n"
      << "hlli_fallbacks=" << sum.scheme_stats.hlli_fallbacks << "\n"
      << "wall_seconds=" << sum.wall_seconds << "\n";
  }
  return RunResult{sum, std::move(setup.grid), setup.field, spec};
}

//! Discrete norms of (numeric - exact) for one primitive component at zone
//! centers: L1 = dx * sum |e_i|, Linf = max |e_i|.
inline std::pair<double, double> error_norms(const GridState& grid, const GlobalField& g,
                                             ProblemId id, double t, int component) {
  double sum = 0.0, mx = 0.0;
  for (int i = 0; i < grid.n; ++i) {
    const PrimState w = cons_to_prim(grid.z(i), g);
    const PrimState ex = exact_solution(id, grid.xc(i), t);
    const double wv[8] = {w.rho, w.ux, w.uy, w.uz, w.p_par, w.p_perp, w.By, w.Bz};
    const double ev[8] = {ex.rho, ex.ux, ex.uy, ex.uz, ex.p_par, ex.p_perp, ex.By, ex.Bz};
    const double e = std::abs(wv[component] - ev[component]);
    sum += e;
    mx = std::max(mx, e);
  }
  return {grid.dx * sum, mx};
}

struct ConvergenceRow {
  int n = 0;
  double l1_error = 0.0, l1_order = std::numeric_limits<double>::quiet_NaN();
  double linf_error = 0.0, linf_order = std::numeric_limits<double>::quiet_NaN();
};

inline int convergence_component(ProblemId id) {
  return id == ProblemId::AlfvenWave ? 6 : 0;  // B_y for the Alfven wave, rho otherwise
}

//! Mesh-refinement study with the timestep-reduction rule: the coarsest mesh
//! sets base dt from its CFL, each doubling then scales dt by (1/2)^(order/3)
//! for orders 5/7; order 3 stays on the CFL controller.
inline std::vector<ConvergenceRow> convergence_table(const RunConfig& cfg) {
  if (cfg.convergence.empty()) throw ConfigError("convergence: mesh list is empty");
  ProblemSpec spec = problem_spec(cfg.problem);
  if (cfg.t_end >= 0.0) spec.t_end = cfg.t_end;
  const int comp = convergence_component(cfg.problem);

  double base_dt = 0.0;
  {
    ProblemSetup setup = init_problem(spec, cfg.convergence.front());
    StepControl ctl{cfg.cfl > 0.0 ? cfg.cfl : spec.cfl, 0.0,
                    std::numeric_limits<double>::infinity(), DtRule::CFLOnly};
    base_dt = compute_dt(setup.grid, ctl, setup.field);
  }

  std::vector<ConvergenceRow> rows;
  for (std::size_t lev = 0; lev < cfg.convergence.size(); ++lev) {
    RunConfig one = cfg;
    one.n = cfg.convergence[lev];
    one.convergence.clear();
    one.outdir.clear();
    std::optional<double> fixed_dt;
    if (cfg.order >= 5 && lev > 0)
      fixed_dt = accuracy_dt_rule(static_cast<int>(lev), base_dt, cfg.order);
    const RunResult r = run_simulation(one, fixed_dt);
    ConvergenceRow row;
    row.n = one.n;
    std::tie(row.l1_error, row.linf_error) =
        error_norms(r.grid, r.field, cfg.problem, r.summary.t_final, comp);
    if (!rows.empty()) {
      const double ratio = std::log2(static_cast<double>(row.n) / rows.back().n);
      row.l1_order = std::log2(rows.back().l1_error / row.l1_error) / ratio;
      row.linf_order = std::log2(rows.back().linf_error / row.linf_error) / ratio;
    }
    rows.push_back(row);
  }

  if (!cfg.outdir.empty()) {
    std::filesystem::create_directories(cfg.outdir);
    std::ofstream csv(cfg.outdir + "/convergence.csv");
    csv << "n,l1_error,l1_order,linf_error,linf_order\n" << std::setprecision(17);
    for (const auto& r : rows) {
      csv << r.n << ',' << r.l1_error << ',';
      if (std::isfinite(r.l1_order)) csv << r.l1_order;
      csv << ',' << r.linf_error << ',';
      if (std::isfinite(r.linf_order)) csv << r.linf_order;
      csv << '\n';
    }
  }
  return rows;
}

inline std::string format_convergence_table(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream os;
  os << std::setw(8) << "n" << std::setw(16) << "L1 error" << std::setw(12)
     << "L1 order" << std::setw(16) << "Linf error" << std::setw(12) << "Linf order"
     << '\n';
  for (const auto& r : rows) {
    os << std::setw(8) << r.n << std::setw(16) << std::scientific
       << std::setprecision(3) << r.l1_error;
    if (std::isfinite(r.l1_order))
      os << std::setw(12) << std::fixed << std::setprecision(3) << r.l1_order;
    else
      os << std::setw(12) << "--";
    os << std::setw(16) << std::scientific << std::setprecision(3) << r.linf_error;
    if (std::isfinite(r.linf_order))
      os << std::setw(12) << std::fixed << std::setprecision(3) << r.linf_order;
    else
      os << std::setw(12) << "--";
    os << '\n';
  }
  return os.str();
}

//! key=value config file ([section] headers and #-comments allowed).
inline void apply_config_line(RunConfig& cfg, const std::string& key,
                              const std::string& value) {
  auto to_int = [&](const std::string& v) {
    try { return std::stoi(v); } catch (...) { throw ConfigError("bad integer for " + key); }
  };
  auto to_double = [&](const std::string& v) {
    try { return std::stod(v); } catch (...) { throw ConfigError("bad number for " + key); }
  };
  if (key == "problem") cfg.problem = parse_problem(value);
  else if (key == "order") cfg.order = to_int(value);
  else if (key == "solver") {
    if (value == "hll") cfg.solver = Solver::HLL;
    else if (value == "hlli") cfg.solver = Solver::HLLI;
    else throw ConfigError("solver must be hll or hlli");
  } else if (key == "n") cfg.n = to_int(value);
  else if (key == "cfl") cfg.cfl = to_double(value);
  else if (key == "t_end") cfg.t_end = to_double(value);
  else if (key == "tau") { cfg.tau_mode = RunConfig::TauMode::Value; cfg.tau_value = to_double(value); }
  else if (key == "no_source") { if (value == "true" || value == "1") cfg.tau_mode = RunConfig::TauMode::Disabled; }
  else if (key == "flattener") cfg.flattener = (value == "true" || value == "1");
  else if (key == "out") cfg.outdir = value;
  else if (key == "dump_every") cfg.dump_every = to_int(value);
  else if (key == "convergence") {
    cfg.convergence.clear();
    std::stringstream ss(value);
    std::string tok;
    while (std::getline(ss, tok, ',')) if (!tok.empty()) cfg.convergence.push_back(to_int(tok));
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

inline void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto ltrim = line.find_first_not_of(" \t\r");
    if (ltrim == std::string::npos) continue;
    auto rtrim = line.find_last_not_of(" \t\r");
    line = line.substr(ltrim, rtrim - ltrim + 1);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("bad config line: " + line);
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

}  // namespace cgl
