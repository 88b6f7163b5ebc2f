#include <catch2/catch_amalgamated.hpp>

#include "cgl/harness.hpp"
#include "cgl/problems.hpp"
#include "cgl/reference.hpp"

using namespace cgl;
using Catch::Approx;

TEST_CASE("oracle preserves a free stream") {
  const GlobalField g{0.9};
  GridState grid(24, 0.0, 1.0);
  const ConsState u = prim_to_cons(PrimState{1.2, 0.3, -0.1, 0.2, 0.8, 1.1, 0.6, -0.4}, g);
  for (int i = 0; i < 24; ++i) grid.z(i) = u;
  auto bc = [](GridState& gr) { apply_bc(gr, BcKind::Periodic); };
  const GridState next = reference::rusanov_step(grid, 1e-3, g, std::nullopt, bc);
  for (int i = 0; i < 24; ++i)
    for (int c = 0; c < 8; ++c)
      CHECK(next.z(i).to_vec()[c] == Approx(u.to_vec()[c]).margin(1e-14));
}

TEST_CASE("oracle is second order on the smooth advection problem") {
  const GlobalField g{1.0};
  std::vector<double> errs;
  for (int n : {50, 100, 200}) {
    GridState grid(n, 0.0, 1.0);
    for (int i = 0; i < n; ++i)
      grid.z(i) = prim_to_cons(exact_solution(ProblemId::Accuracy, grid.xc(i), 0.0), g);
    auto bc = [](GridState& gr) { apply_bc(gr, BcKind::Periodic); };
    const double T = 0.2;
    double t = 0.0;
    while (t < T - 1e-14) {
      StepControl ctl{0.4, t, T, DtRule::CFLOnly};
      const double dt = compute_dt(grid, ctl, g);
      grid = reference::rusanov_step(grid, dt, g, std::nullopt, bc);
      t += dt;
    }
    double e1 = 0.0;
    for (int i = 0; i < n; ++i)
      e1 += std::abs(cons_to_prim(grid.z(i), g).rho -
                     exact_solution(ProblemId::Accuracy, grid.xc(i), t).rho);
    errs.push_back(e1 / n);
  }
  for (std::size_t k = 0; k + 1 < errs.size(); ++k) {
    const double eoc = std::log2(errs[k] / errs[k + 1]);
    CHECK(eoc > 1.6);
    CHECK(eoc < 2.4);
  }
}

TEST_CASE("oracle conserves the conservative components") {
  const GlobalField g{1.0};
  const int n = 64;
  GridState grid(n, 0.0, 1.0);
  for (int i = 0; i < n; ++i)
    grid.z(i) = prim_to_cons(exact_solution(ProblemId::Accuracy, grid.xc(i), 0.0), g);
  auto bc = [](GridState& gr) { apply_bc(gr, BcKind::Periodic); };
  Vec8 before{};
  for (int i = 0; i < n; ++i) before += grid.z(i).to_vec();
  GridState next = grid;
  for (int k = 0; k < 20; ++k) next = reference::rusanov_step(next, 5e-4, g, std::nullopt, bc);
  Vec8 after{};
  for (int i = 0; i < n; ++i) after += next.z(i).to_vec();
  for (int c = 0; c < 8; ++c) {
    if (c == 4) continue;
    CHECK(after[c] == Approx(before[c]).margin(1e-12 * std::max(1.0, std::abs(before[c])) * n));
  }
}

TEST_CASE("deep star oracle basics") {
  const GlobalField g{1.1};
  const ConsState u = prim_to_cons(PrimState{1.0, 0.2, 0, 0, 1.0, 1.2, 0.8, 0.3}, g);
  const ConsState s = reference::deep_star_oracle(u, u, g);
  for (int c = 0; c < 8; ++c)
    CHECK(s.to_vec()[c] == Approx(u.to_vec()[c]).margin(1e-12));
}

TEST_CASE("stiff oracle run pins the pressures together") {
  const GlobalField g{1.0};
  const int n = 64;
  GridState grid(n, 0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    PrimState w = exact_solution(ProblemId::Accuracy, grid.xc(i), 0.0);
    w.p_par = 1.3;  // start anisotropic
    grid.z(i) = prim_to_cons(w, g);
  }
  auto bc = [](GridState& gr) { apply_bc(gr, BcKind::Periodic); };
  GridState next = grid;
  for (int k = 0; k < 10; ++k) next = reference::rusanov_step(next, 1e-3, g, 1e-8, bc);
  for (int i = 0; i < n; ++i) CHECK(std::abs(next.z(i).dp) < 1e-6);
}
