#pragma once

// Semi-discrete AFD-WENO right-hand side: characteristic WENO interpolation
// to faces, HLL/HLLI fluctuations, in-zone flux differences, C(U_i)-weighted
// jump terms, and the even-derivative face corrections.

#include <cstdint>
#include <vector>

#include "cgl/eigensystem.hpp"
#include "cgl/riemann.hpp"
#include "cgl/state.hpp"
#include "cgl/weno.hpp"

namespace cgl {

struct GridState {
  static constexpr int kGhost = 4;

  int n = 0;
  double dx = 0.0;
  double x0 = 0.0;
  std::vector<ConsState> cells;  // n + 2*kGhost

  GridState() = default;
  GridState(int n_, double xa, double xb)
      : n(n_), dx((xb - xa) / n_), x0(xa), cells(n_ + 2 * kGhost) {}

  ConsState& z(int i) { return cells[i + kGhost]; }
  const ConsState& z(int i) const { return cells[i + kGhost]; }
  double xc(int i) const { return x0 + (i + 0.5) * dx; }
};

enum class Solver : std::uint8_t { HLL, HLLI };

struct SchemeConfig {
  int order = 5;
  Solver solver = Solver::HLL;
  bool flattener = true;
};

//! Counters a driver may aggregate across a run.
struct RhsStats {
  long face_value_fallbacks = 0;  // face pairs reverted to the zone value
  long componentwise_zones = 0;   // zones interpolated without projection
  long hlli_fallbacks = 0;
};

namespace detail {

inline double correction_combo(const BoundaryDerivatives& d, int order) {
  double c = -d.d2 / 24.0;
  if (order >= 5) c += 7.0 * d.d4 / 5760.0;
  if (order >= 7) c += -31.0 * d.d6 / 967680.0;
  return c;
}

}  // namespace detail

//! Per-zone blend factor eta in [0,1]; face values are pulled toward the
//! zone value near strong shocks (compression against the local slow speed
//! gated by a pressure jump), eta = 1 on smooth data.
inline std::vector<double> flatten(const GridState& grid,
                                   const std::vector<PrimState>& prim,
                                   const GlobalField& g) {
  constexpr double kappa = 0.1;
  const int n = grid.n;
  const int gh = GridState::kGhost;
  auto wz = [&](int j) -> const PrimState& { return prim[j + gh]; };

  std::vector<double> raw(n + 2 * gh, 1.0);
  for (int i = -gh + 1; i < n + gh - 1; ++i) {
    const double du = 0.5 * (wz(i + 1).ux - wz(i - 1).ux);
    if (du >= 0.0) continue;
    double pmin = std::numeric_limits<double>::infinity(), pmax = 0.0;
    for (int j = std::max(i - 2, -gh); j <= std::min(i + 2, n + gh - 1); ++j) {
      pmin = std::min(pmin, wz(j).p_avg());
      pmax = std::max(pmax, wz(j).p_avg());
    }
    if (pmax <= 3.0 * pmin) continue;
    double cs = std::numeric_limits<double>::infinity();
    for (int j = i - 1; j <= i + 1; ++j) cs = std::min(cs, wave_speeds(wz(j), g).cs);
    const double thresh = kappa * std::max(cs, 1e-300);
    raw[i + gh] = std::clamp(2.0 + du / thresh, 0.0, 1.0);
  }
  std::vector<double> eta(n + 2 * gh, 1.0);
  for (int i = -gh + 2; i < n + gh - 2; ++i)
    eta[i + gh] = std::min({raw[i + gh - 1], raw[i + gh], raw[i + gh + 1]});
  return eta;
}

//! Assembles dU/dt for every interior zone. Ghost zones must be filled.
//! Numerical failures carry the zone index via ZoneFailure.
inline std::vector<Vec8> semidiscrete_rhs(const GridState& grid, const SchemeConfig& cfg,
                                          const GlobalField& g, RhsStats* stats = nullptr,
                                          double time_for_diag = 0.0) {
  const int n = grid.n;
  const int gh = GridState::kGhost;
  const int s = weno::stencil_radius(cfg.order);
  const int nw = weno::face_window(cfg.order);

  std::vector<PrimState> prim(n + 2 * gh);
  std::vector<Vec8> fpt(n + 2 * gh);
  for (int j = -gh; j < n + gh; ++j) {
    try {
      prim[j + gh] = cons_to_prim(grid.z(j), g);
      fpt[j + gh] = flux(prim[j + gh], g);
    } catch (const std::runtime_error& e) {
      throw ZoneFailure(e.what(), j, time_for_diag);
    }
  }

  std::vector<double> eta;
  if (cfg.flattener) eta = flatten(grid, prim, g);

  RhsStats local;

  // face values produced by zones -1..n (slot i+1)
  std::vector<Vec8> uhat_l(n + 2), uhat_r(n + 2);
  std::vector<PrimState> what_l(n + 2), what_r(n + 2);
  for (int i = -1; i <= n; ++i) {
    double winbuf[8][7];
    bool projected = true;
    EigenDecomp d;
    try {
      d = eigendecomp_cons(prim[i + gh], g);
    } catch (const IllConditioned&) {
      projected = false;
    } catch (const NotHyperbolic&) {
      projected = false;
    }
    if (projected) {
      for (int j = -s; j <= s; ++j) {
        const Vec8 chi = d.L * grid.z(i + j).to_vec();
        for (int c = 0; c < 8; ++c) winbuf[c][j + s] = chi[c];
      }
    } else {
      local.componentwise_zones += 1;
      for (int j = -s; j <= s; ++j) {
        const Vec8 u = grid.z(i + j).to_vec();
        for (int c = 0; c < 8; ++c) winbuf[c][j + s] = u[c];
      }
    }
    Vec8 chi_l, chi_r;
    for (int c = 0; c < 8; ++c) {
      const weno::FaceValues f = weno_ao_interpolate(winbuf[c], cfg.order);
      chi_l[c] = f.left;
      chi_r[c] = f.right;
    }
    Vec8 ul = projected ? d.R * chi_l : chi_l;
    Vec8 ur = projected ? d.R * chi_r : chi_r;
    if (cfg.flattener) {
      const double e = eta[i + gh];
      if (e < 1.0) {
        const Vec8 uc = grid.z(i).to_vec();
        ul = e * ul + (1.0 - e) * uc;
        ur = e * ur + (1.0 - e) * uc;
      }
    }
    try {
      what_l[i + 1] = cons_to_prim(ConsState::from_vec(ul), g);
      what_r[i + 1] = cons_to_prim(ConsState::from_vec(ur), g);
      uhat_l[i + 1] = ul;
      uhat_r[i + 1] = ur;
    } catch (const NonPhysical&) {
      local.face_value_fallbacks += 1;
      uhat_l[i + 1] = uhat_r[i + 1] = grid.z(i).to_vec();
      what_l[i + 1] = what_r[i + 1] = prim[i + gh];
    }
  }

  // faces k = 0..n sit between zones (k-1, k)
  std::vector<Vec8> dm(n + 1), dp(n + 1);
  std::vector<Vec8> corr_f(n + 1);
  std::vector<std::array<double, 4>> corr_u(n + 1);
  for (int k = 0; k <= n; ++k) {
    const int i = k - 1;  // zone left of the face
    const PrimState& wm = what_r[i + 1];
    const PrimState& wp = what_l[i + 2];
    try {
      const SpeedBounds sb = speed_bounds(wm, wp, g);
      const ConsState um = ConsState::from_vec(uhat_r[i + 1]);
      const ConsState up = ConsState::from_vec(uhat_l[i + 2]);
      FluctuationPair fl;
      if (cfg.solver == Solver::HLLI) {
        const PrimState neigh[4] = {prim[i - 1 + gh], prim[i + gh],
                                    prim[i + 1 + gh], prim[i + 2 + gh]};
        const double psi = shock_detector(std::span<const PrimState>(neigh, 4), g);
        fl = hlli_fluctuations(um, up, g, psi, sb);
        if (fl.hlli_fallback) local.hlli_fallbacks += 1;
      } else {
        fl = hll_fluctuations(um, up, g, sb);
      }
      dm[k] = fl.d_minus;
      dp[k] = fl.d_plus;
    } catch (const std::runtime_error& e) {
      throw ZoneFailure(e.what(), i, time_for_diag);
    }
    double win[8];
    const int off = nw / 2;
    for (int c = 0; c < 8; ++c) {
      for (int j = 0; j < nw; ++j) win[j] = fpt[i - off + 1 + j + gh][c];
      corr_f[k][c] =
          detail::correction_combo(boundary_derivative_interpolate(win, cfg.order), cfg.order);
    }
    for (int c = 0; c < 4; ++c) {
      for (int j = 0; j < nw; ++j) win[j] = grid.z(i - off + 1 + j).to_vec()[c];
      corr_u[k][c] =
          detail::correction_combo(boundary_derivative_interpolate(win, cfg.order), cfg.order);
    }
  }

  std::vector<Vec8> rhs(n);
  const double inv_dx = 1.0 / grid.dx;
  for (int i = 0; i < n; ++i) {
    const Vec8& ul = uhat_l[i + 1];   // Uhat+_{i-1/2}
    const Vec8& ur = uhat_r[i + 1];   // Uhat-_{i+1/2}
    const Vec8 fr = flux(what_r[i + 1], g);
    const Vec8 fl = flux(what_l[i + 1], g);
    const NonconsRow ci = noncons_row(prim[i + gh], g);
    Vec8 acc;
    for (int c = 0; c < 8; ++c)
      acc[c] = dm[i + 1][c] + dp[i][c] + fr[c] - fl[c] + corr_f[i + 1][c] - corr_f[i][c];
    double jump4 = 0.0;
    for (int c = 0; c < 4; ++c)
      jump4 += ci.c[c] * (ur[c] - ul[c] + corr_u[i + 1][c] - corr_u[i][c]);
    acc[4] += jump4;
    rhs[i] = (-inv_dx) * acc;
  }
  if (stats) {
    stats->face_value_fallbacks += local.face_value_fallbacks;
    stats->componentwise_zones += local.componentwise_zones;
    stats->hlli_fallbacks += local.hlli_fallbacks;
  }
  return rhs;
}

}  // namespace cgl
