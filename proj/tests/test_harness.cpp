#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cgl/harness.hpp"

using namespace cgl;
using Catch::Approx;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("error norms") {
  RunConfig cfg;
  cfg.problem = ProblemId::Accuracy;
  cfg.order = 3;
  cfg.n = 40;
  cfg.t_end = 0.0;  // no stepping: numeric == exact
  const RunResult r = run_simulation(cfg);
  auto [l1, linf] = error_norms(r.grid, r.field, ProblemId::Accuracy, 0.0, 0);
  CHECK(l1 == 0.0);
  CHECK(linf == 0.0);

  GridState shifted = r.grid;
  for (int i = 0; i < shifted.n; ++i) shifted.z(i).rho += 0.01;
  std::tie(l1, linf) = error_norms(shifted, r.field, ProblemId::Accuracy, 0.0, 0);
  CHECK(l1 == Approx(0.01).epsilon(1e-12));    // unit domain
  CHECK(linf == Approx(0.01).epsilon(1e-12));
}

TEST_CASE("order computation reproduces the reference ratios") {
  // successive-row order = log2(err_coarse/err_fine) for doubled meshes
  CHECK(std::log2(2.94e-4 / 9.04e-6) == Approx(5.0213).margin(5e-3));
}

TEST_CASE("single-mesh study has no order entries") {
  RunConfig cfg;
  cfg.problem = ProblemId::Accuracy;
  cfg.order = 3;
  cfg.t_end = 0.05;
  cfg.convergence = {16};
  const auto rows = convergence_table(cfg);
  REQUIRE(rows.size() == 1);
  CHECK_FALSE(std::isfinite(rows[0].l1_order));
  CHECK(rows[0].l1_error > 0.0);
}

TEST_CASE("runs are deterministic and summaries are consistent") {
  RunConfig cfg;
  cfg.problem = ProblemId::Accuracy;
  cfg.order = 3;
  cfg.n = 20;
  cfg.t_end = 0.05;
  cfg.outdir = "harness_test_out_a";
  const RunResult a = run_simulation(cfg);
  cfg.outdir = "harness_test_out_b";
  const RunResult b = run_simulation(cfg);
  CHECK(a.summary.rhs_evals == 3 * a.summary.steps);
  CHECK(a.summary.steps == b.summary.steps);

  const std::string fa = "harness_test_out_a/fields_t" +
                         std::to_string(0.05).substr(0, 8) + ".csv";
  // compare the final dumps byte for byte
  std::string pa, pb;
  for (const auto& e : std::filesystem::directory_iterator("harness_test_out_a"))
    if (e.path().string().find("fields_t0.05") != std::string::npos) pa = e.path().string();
  for (const auto& e : std::filesystem::directory_iterator("harness_test_out_b"))
    if (e.path().string().find("fields_t0.05") != std::string::npos) pb = e.path().string();
  REQUIRE_FALSE(pa.empty());
  REQUIRE_FALSE(pb.empty());
  CHECK(slurp(pa) == slurp(pb));
  const std::string head = slurp(pa).substr(0, 60);
  CHECK(head.rfind("x,rho,ux,uy,uz,p_par,p_perp,By,Bz,E,dp", 0) == 0);
  std::filesystem::remove_all("harness_test_out_a");
  std::filesystem::remove_all("harness_test_out_b");
}

TEST_CASE("config parsing and validation") {
  const std::string path = "harness_test_cfg.ini";
  {
    std::ofstream out(path);
    out << "# test config\n[run]\nproblem = rp2\norder = 7\nsolver = hlli\n"
        << "n = 120\ncfl = 0.5\ntau = 1e-6\nconvergence = 10, 20,40\n";
  }
  RunConfig cfg;
  load_config_file(cfg, path);
  CHECK(cfg.problem == ProblemId::RP2_RyuJones);
  CHECK(cfg.order == 7);
  CHECK(cfg.solver == Solver::HLLI);
  CHECK(cfg.n == 120);
  CHECK(cfg.cfl == 0.5);
  CHECK(cfg.tau_mode == RunConfig::TauMode::Value);
  CHECK(cfg.tau_value == 1e-6);
  REQUIRE(cfg.convergence.size() == 3);
  CHECK(cfg.convergence[2] == 40);
  std::filesystem::remove(path);

  RunConfig bad;
  CHECK_THROWS_AS(apply_config_line(bad, "nonsense", "1"), ConfigError);
  bad.order = 4;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  RunConfig bad2;
  bad2.n = 5;
  CHECK_THROWS_AS(bad2.validate(), ConfigError);
}

TEST_CASE("short stiff run keeps the pressures isotropic") {
  RunConfig cfg;
  cfg.problem = ProblemId::RP1_BrioWu;
  cfg.order = 3;
  cfg.n = 64;
  cfg.t_end = 0.02;
  cfg.tau_mode = RunConfig::TauMode::Value;
  cfg.tau_value = 1e-8;
  const RunResult r = run_simulation(cfg);
  CHECK(r.summary.steps > 0);
  double mx = 0.0;
  for (int i = 0; i < r.grid.n; ++i) mx = std::max(mx, std::abs(r.grid.z(i).dp));
  CHECK(mx < 1e-6);
  CHECK(r.summary.min_rho > 0.0);
}
