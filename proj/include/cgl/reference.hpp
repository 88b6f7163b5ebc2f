#pragma once

// Independent low-order oracles: a second-order path-conservative
// Rusanov/MinMod scheme (MHD-limit references, cross-checks) and a
// deep-iteration dense-quadrature star-state solver. This path shares only
// the state module with the production scheme; speeds and path integrals are
// computed locally.

#include <cmath>
#include <optional>
#include <vector>

#include "cgl/errors.hpp"
#include "cgl/scheme.hpp"  // GridState
#include "cgl/state.hpp"

namespace cgl {
namespace reference {

//! Fast-speed bound recomputed from the closed forms, independent of the
//! eigensystem module.
inline double max_signal_speed(const PrimState& w, const GlobalField& g) {
  const double B2 = bsq(w, g);
  const double B4 = B2 * B2;
  const double Bx2 = g.Bx * g.Bx;
  const double Bt2 = w.By * w.By + w.Bz * w.Bz;
  const double pi = M_PI;
  const double a1 = B4 - 16.0 * pi * Bx2 * w.p_par;
  double y1sq = a1 * a1 + 8.0 * a1 * (Bx2 + 2.0 * Bt2) * pi * w.p_perp +
                16.0 * (Bx2 * Bx2 + 8.0 * Bx2 * Bt2 + 4.0 * Bt2 * Bt2) * pi * pi *
                    w.p_perp * w.p_perp;
  const double Y1 = std::sqrt(std::max(y1sq, 0.0));
  const double Y2 = B4 + 4.0 * pi * Bx2 * (2.0 * w.p_par + w.p_perp) + 8.0 * pi * Bt2 * w.p_perp;
  const double cf = std::sqrt(std::max(Y2 + Y1, 0.0) / (8.0 * pi * w.rho * B2));
  return std::abs(w.ux) + cf;
}

inline double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

//! Composite-midpoint approximation of the path integral of the nonzero C row.
inline NonconsRow path_row_midpoint(const ConsState& ua, const ConsState& ub,
                                    const GlobalField& g, int npts) {
  const Vec8 va = ua.to_vec(), vb = ub.to_vec();
  NonconsRow acc;
  const double w = 1.0 / npts;
  for (int q = 0; q < npts; ++q) {
    const double xi = (q + 0.5) * w;
    const ConsState u = ConsState::from_vec(va + xi * (vb - va));
    const NonconsRow r = noncons_row(cons_to_prim(u, g), g);
    for (int j = 0; j < 4; ++j) acc.c[j] += w * r.c[j];
  }
  return acc;
}

//! One SSP-RK2 step of the MinMod/Rusanov path-conservative scheme, with the
//! stiff relaxation applied as a closed-form implicit solve after the step.
//! bc_fill must fill the ghost zones of its argument.
template <typename BcFill>
GridState rusanov_step(const GridState& grid, double dt, const GlobalField& g,
                       const std::optional<double>& tau, BcFill&& bc_fill) {
  auto rhs = [&](GridState& gr) {
    bc_fill(gr);
    const int n = gr.n;
    std::vector<Vec8> ql(n + 2), qr(n + 2);  // face values from zones -1..n
    for (int i = -1; i <= n; ++i) {
      const Vec8 um = gr.z(i - 1).to_vec(), u0 = gr.z(i).to_vec(), up = gr.z(i + 1).to_vec();
      Vec8 l, r;
      for (int c = 0; c < 8; ++c) {
        const double sl = minmod(u0[c] - um[c], up[c] - u0[c]);
        l[c] = u0[c] - 0.5 * sl;
        r[c] = u0[c] + 0.5 * sl;
      }
      ql[i + 1] = l;
      qr[i + 1] = r;
    }
    std::vector<Vec8> dminus(n + 1), dplus(n + 1);
    for (int k = 0; k <= n; ++k) {
      const int i = k - 1;
      const Vec8& uLv = qr[i + 1];
      const Vec8& uRv = ql[i + 2];
      const ConsState uL = ConsState::from_vec(uLv), uR = ConsState::from_vec(uRv);
      const PrimState wL = cons_to_prim(uL, g), wR = cons_to_prim(uR, g);
      const double s = std::max(max_signal_speed(wL, g), max_signal_speed(wR, g));
      const Vec8 fL = flux(wL, g), fR = flux(wR, g);
      const NonconsRow ct = path_row_midpoint(uL, uR, g, 8);
      for (int c = 0; c < 8; ++c) {
        const double df = fR[c] - fL[c];
        const double du = uRv[c] - uLv[c];
        const double nc = (c == 4) ? ct.apply(uRv - uLv) : 0.0;
        dminus[k][c] = 0.5 * (df - s * du + nc);
        dplus[k][c] = 0.5 * (df + s * du + nc);
      }
    }
    std::vector<Vec8> out(n);
    for (int i = 0; i < n; ++i) {
      const PrimState wl = cons_to_prim(ConsState::from_vec(ql[i + 1]), g);
      const PrimState wr = cons_to_prim(ConsState::from_vec(qr[i + 1]), g);
      const Vec8 fl = flux(wl, g), fr = flux(wr, g);
      const NonconsRow ci = noncons_row(cons_to_prim(gr.z(i), g), g);
      Vec8 acc;
      for (int c = 0; c < 8; ++c)
        acc[c] = dminus[i + 1][c] + dplus[i][c] + fr[c] - fl[c];
      acc[4] += ci.apply(qr[i + 1] - ql[i + 1]);
      out[i] = (-1.0 / gr.dx) * acc;
    }
    return out;
  };

  GridState u1 = grid;
  {
    GridState tmp = grid;
    const auto k = rhs(tmp);
    for (int i = 0; i < grid.n; ++i)
      u1.z(i) = ConsState::from_vec(grid.z(i).to_vec() + dt * k[i]);
  }
  GridState out = grid;
  {
    const auto k = rhs(u1);
    for (int i = 0; i < grid.n; ++i)
      out.z(i) = ConsState::from_vec(0.5 * grid.z(i).to_vec() +
                                     0.5 * (u1.z(i).to_vec() + dt * k[i]));
  }
  if (tau) {
    for (int i = 0; i < grid.n; ++i) out.z(i).dp /= 1.0 + dt / *tau;
  }
  return out;
}

//! Star-state oracle: 50 fixed-point iterations with 1000-point composite
//! quadrature for every path integral. sL/sR recomputed locally.
inline ConsState deep_star_oracle(const ConsState& uL, const ConsState& uR,
                                  const GlobalField& g, bool zero_noncons = false) {
  const PrimState wL = cons_to_prim(uL, g), wR = cons_to_prim(uR, g);
  auto minmax = [&](const PrimState& w, double& lo, double& hi) {
    const double m = max_signal_speed(w, g);  // |ux| + cf
    const double cf = m - std::abs(w.ux);
    lo = std::min(lo, w.ux - cf);
    hi = std::max(hi, w.ux + cf);
  };
  double sL = std::numeric_limits<double>::infinity();
  double sR = -std::numeric_limits<double>::infinity();
  minmax(wL, sL, sR);
  minmax(wR, sL, sR);
  const ConsState uavg =
      ConsState::from_vec(0.5 * (uL.to_vec() + uR.to_vec()));
  try {
    minmax(cons_to_prim(uavg, g), sL, sR);
  } catch (const NonPhysical&) {
  }
  const double ds = sR - sL;
  if (!(ds > 0.0)) return uL;

  const Vec8 vL = uL.to_vec(), vR = uR.to_vec();
  const Vec8 fL = flux(wL, g), fR = flux(wR, g);
  Vec8 base;
  for (int c = 0; c < 8; ++c)
    base[c] = (sR * vR[c] - sL * vL[c] - (fR[c] - fL[c])) / ds;

  Vec8 vs = base;
  if (zero_noncons) return ConsState::from_vec(vs);  // diagnostic hook
  vs[4] = base[4] - path_row_midpoint(uL, uR, g, 1000).apply(vR - vL) / ds;
  double resid = std::numeric_limits<double>::infinity();
  const double scale = std::max({std::abs(vs[4]), std::abs(vL[4]), std::abs(vR[4]), 1e-30});
  for (int it = 0; it < 50; ++it) {
    const ConsState us = ConsState::from_vec(vs);
    const NonconsRow cm = path_row_midpoint(uL, us, g, 1000);
    const NonconsRow cp = path_row_midpoint(us, uR, g, 1000);
    const double dp_new = base[4] - (cm.apply(vs - vL) + cp.apply(vR - vs)) / ds;
    resid = std::abs(dp_new - vs[4]);
    vs[4] = dp_new;
  }
  if (resid > 1e-10 * scale)
    throw NoConvergence("deep_star_oracle: residual " + std::to_string(resid));
  return ConsState::from_vec(vs);
}

}  // namespace reference
}  // namespace cgl
