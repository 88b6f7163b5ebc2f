#pragma once

// Explicit SSP-RK3, the IMEX-RK3 variant for the stiff relaxation source
// (closed-form implicit stage solves), and CFL timestep control.

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "cgl/eigensystem.hpp"
#include "cgl/scheme.hpp"
#include "cgl/state.hpp"

namespace cgl {

enum class DtRule : std::uint8_t { CFLOnly, AccuracyReduction };

struct StepControl {
  double cfl = 0.8;
  double t = 0.0;
  double t_end = 0.0;
  DtRule rule = DtRule::CFLOnly;
};

//! dt = cfl dx / max(|ux| + c_f), clipped to land on t_end.
inline double compute_dt(const GridState& grid, const StepControl& ctl,
                         const GlobalField& g) {
  double vmax = 0.0;
  for (int i = 0; i < grid.n; ++i) {
    const PrimState w = cons_to_prim(grid.z(i), g);
    vmax = std::max(vmax, wave_speeds(w, g).max_abs_lambda());
  }
  double dt = ctl.cfl * grid.dx / std::max(vmax, 1e-300);
  return std::min(dt, ctl.t_end - ctl.t);
}

//! dt for mesh-doubling level in an accuracy study: base * (1/2)^(level*order/3).
inline double accuracy_dt_rule(int level, double base_dt, int order) {
  return base_dt * std::pow(0.5, level * order / 3.0);
}

using RhsFn = std::function<std::vector<Vec8>(GridState&)>;

//! Shu-Osher three-stage SSP-RK3. The evaluator fills ghosts itself.
inline GridState ssprk3_step(const GridState& grid, double dt, const RhsFn& rhs) {
  GridState u1 = grid;
  {
    GridState tmp = grid;
    const auto k = rhs(tmp);
    for (int i = 0; i < grid.n; ++i)
      u1.z(i) = ConsState::from_vec(grid.z(i).to_vec() + dt * k[i]);
  }
  GridState u2 = grid;
  {
    const auto k = rhs(u1);
    for (int i = 0; i < grid.n; ++i)
      u2.z(i) = ConsState::from_vec(0.75 * grid.z(i).to_vec() +
                                    0.25 * (u1.z(i).to_vec() + dt * k[i]));
  }
  GridState out = grid;
  {
    const auto k = rhs(u2);
    for (int i = 0; i < grid.n; ++i)
      out.z(i) = ConsState::from_vec((1.0 / 3.0) * grid.z(i).to_vec() +
                                     (2.0 / 3.0) * (u2.z(i).to_vec() + dt * k[i]));
  }
  return out;
}

namespace imex {

// Six-stage globally stiffly accurate pair. The explicit tableau is SSP-RK3
// padded with a leading relaxation stage and two combination stages, so the
// hyperbolic part needs three RHS evaluations and keeps the SSP-RK3 stability
// region. The implicit DIRK satisfies every additive third-order coupling
// condition, is contractive on the negative real axis with |R(-z)| ~ z^-2
// (R(-1e5) ~ 4e-11), and returns the exact relaxation equilibrium tau*G in
// the stiff forced limit.
inline constexpr int kStages = 6;
inline constexpr double AE[6][6] = {
    {0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0},
    {0, 1.0, 0, 0, 0, 0},
    {0, 0.25, 0.25, 0, 0, 0},
    {0, 1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0, 0, 0},
    {0, 1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0, 0, 0}};
inline constexpr double AI[6][6] = {
    {1.0055531699492701, 0, 0, 0, 0, 0},
    {-1.2449207934734507, 1.2449207934734507, 0, 0, 0, 0},
    {0.37708450239121399, 0.50930468562720332, 0.11361081198158256, 0, 0, 0},
    {0.21695907277055898, -0.46628921984548927, -0.30613555306572166,
     1.0554657001406520, 0, 0},
    {0, 0.55814714182155112, -0.40820777913919731, -0.11629428364310157,
     0.96635492096074804, 0},
    {0, 1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0, -0.60352002395212712,
     0.60352002395212712}};
inline constexpr double bE[6] = {0, 1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0, 0, 0};
inline constexpr double bI[6] = {0, 1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0,
                                 -0.60352002395212712, 0.60352002395212712};

}  // namespace imex

//! IMEX-RK3 step: explicit tableau on the hyperbolic RHS, implicit DIRK on
//! the relaxation source. The source is linear in the anisotropy slot, so
//! each stage solve is the closed form dp <- dp_expl / (1 + a_ii dt/tau).
//! With the source disabled this is exactly the explicit SSP-RK3 path.
inline GridState imex_rk3_step(const GridState& grid, double dt, const RhsFn& rhs,
                               const std::optional<double>& tau) {
  if (!tau) return ssprk3_step(grid, dt, rhs);
  const int n = grid.n;
  const double idt_tau = dt / *tau;
  constexpr int ns = imex::kStages;

  std::vector<Vec8> kex[ns];
  std::vector<double> kim[ns];  // implicit stage derivative of the dp slot
  GridState stage = grid;

  for (int is = 0; is < ns; ++is) {
    for (int i = 0; i < n; ++i) {
      Vec8 acc = grid.z(i).to_vec();
      for (int j = 1; j <= 3 && j < is; ++j)
        if (imex::AE[is][j] != 0.0) acc += (dt * imex::AE[is][j]) * kex[j][i];
      for (int j = 0; j < is; ++j)
        if (imex::AI[is][j] != 0.0) acc[4] += dt * imex::AI[is][j] * kim[j][i];
      acc[4] /= 1.0 + imex::AI[is][is] * idt_tau;
      stage.z(i) = ConsState::from_vec(acc);
    }
    kim[is].resize(n);
    for (int i = 0; i < n; ++i) kim[is][i] = -stage.z(i).dp / *tau;
    // only stages 2..4 feed the explicit part (columns 1..3, bE support)
    if (is >= 1 && is <= 3) kex[is] = rhs(stage);
  }

  GridState out = grid;
  for (int i = 0; i < n; ++i) {
    Vec8 acc = grid.z(i).to_vec();
    for (int j = 1; j <= 3; ++j) acc += (dt * imex::bE[j]) * kex[j][i];
    for (int j = 0; j < ns; ++j) acc[4] += dt * imex::bI[j] * kim[j][i];
    out.z(i) = ConsState::from_vec(acc);
  }
  return out;
}

}  // namespace cgl
