#pragma once

// Wave-speed bounds, linear-path integrals of C, the HLL star-state fixed
// point, HLL fluctuations, the shock detector, and the HLLI anti-diffusion
// correction.

#include <array>
#include <cmath>
#include <span>

#include "cgl/eigensystem.hpp"
#include "cgl/errors.hpp"
#include "cgl/state.hpp"

namespace cgl {

struct SpeedBounds {
  double sL = 0.0, sR = 0.0;
};

//! Extreme eigenvalues over the two face states and their conservative
//! average. Falls back to the two-state extremes if the average state does
//! not admit positive pressures.
inline SpeedBounds speed_bounds(const PrimState& wL, const PrimState& wR,
                                const GlobalField& g) {
  const WaveSpeeds a = wave_speeds(wL, g);
  const WaveSpeeds b = wave_speeds(wR, g);
  SpeedBounds s;
  s.sL = std::min(a.ux - a.cf, b.ux - b.cf);
  s.sR = std::max(a.ux + a.cf, b.ux + b.cf);
  const ConsState uavg = ConsState::from_vec(
      0.5 * (prim_to_cons(wL, g).to_vec() + prim_to_cons(wR, g).to_vec()));
  try {
    const WaveSpeeds m = wave_speeds(cons_to_prim(uavg, g), g);
    s.sL = std::min(s.sL, m.ux - m.cf);
    s.sR = std::max(s.sR, m.ux + m.cf);
  } catch (const NonPhysical&) {
  } catch (const NotHyperbolic&) {
  }
  return s;
}

namespace detail {
// four-point Gauss-Lobatto on [0,1]: nodes {0, 1/2 -+ sqrt(5)/10, 1}
inline constexpr double kLobNode[4] = {0.0, 0.27639320225002106, 0.7236067977499790, 1.0};
inline constexpr double kLobWt[4] = {1.0 / 12.0, 5.0 / 12.0, 5.0 / 12.0, 1.0 / 12.0};
}  // namespace detail

namespace detail {

//! Lobatto-4 contribution over the sub-segment [x0,x1] of the linear path
//! va -> vb; also reports the entry variation across the nodes.
inline NonconsRow lobatto_panel(const Vec8& va, const Vec8& vb, double x0, double x1,
                                const GlobalField& g, double* variation) {
  NonconsRow acc;
  double lo[4], hi[4];
  for (int q = 0; q < 4; ++q) {
    const double xi = x0 + kLobNode[q] * (x1 - x0);
    const ConsState u = ConsState::from_vec(va + xi * (vb - va));
    const NonconsRow r = noncons_row(cons_to_prim(u, g), g);
    for (int j = 0; j < 4; ++j) {
      acc.c[j] += (x1 - x0) * kLobWt[q] * r.c[j];
      lo[j] = q == 0 ? r.c[j] : std::min(lo[j], r.c[j]);
      hi[j] = q == 0 ? r.c[j] : std::max(hi[j], r.c[j]);
    }
  }
  if (variation) {
    double v = 0.0, s = 0.0;
    for (int j = 0; j < 4; ++j) {
      v = std::max(v, hi[j] - lo[j]);
      s = std::max(s, std::max(std::abs(hi[j]), std::abs(lo[j])));
    }
    *variation = s > 0.0 ? v / s : 0.0;
  }
  return acc;
}

inline void path_row_refine(const Vec8& va, const Vec8& vb, double x0, double x1,
                            const GlobalField& g, const NonconsRow& whole, double tol,
                            int depth, NonconsRow& out) {
  const double xm = 0.5 * (x0 + x1);
  const NonconsRow left = lobatto_panel(va, vb, x0, xm, g, nullptr);
  const NonconsRow right = lobatto_panel(va, vb, xm, x1, g, nullptr);
  double diff = 0.0;
  for (int j = 0; j < 4; ++j)
    diff = std::max(diff, std::abs(whole.c[j] - left.c[j] - right.c[j]));
  if (diff <= tol * (x1 - x0) || depth >= 6) {
    for (int j = 0; j < 4; ++j) out.c[j] += left.c[j] + right.c[j];
    return;
  }
  path_row_refine(va, vb, x0, xm, g, left, tol, depth + 1, out);
  path_row_refine(va, vb, xm, x1, g, right, tol, depth + 1, out);
}

}  // namespace detail

//! Path integral of the nonzero row of C along the straight segment,
//! C~(ua,ub) = int_0^1 C(ua + xi (ub-ua)) dxi, by four-point Gauss-Lobatto
//! panels. A single panel resolves mildly varying paths; strong jumps are
//! bisected until the panel sums settle.
inline NonconsRow path_integral_row(const ConsState& ua, const ConsState& ub,
                                    const GlobalField& g) {
  const Vec8 va = ua.to_vec(), vb = ub.to_vec();
  double variation = 0.0;
  const NonconsRow whole = detail::lobatto_panel(va, vb, 0.0, 1.0, g, &variation);
  if (variation <= 1e-3) return whole;
  double scale = 0.0;
  for (int j = 0; j < 4; ++j) scale = std::max(scale, std::abs(whole.c[j]));
  NonconsRow out;
  detail::path_row_refine(va, vb, 0.0, 1.0, g, whole, 1e-12 * std::max(scale, 1e-30), 0, out);
  return out;
}

inline Mat8 path_integral_C(const ConsState& ua, const ConsState& ub,
                            const GlobalField& g) {
  Mat8 c;
  const NonconsRow r = path_integral_row(ua, ub, g);
  for (int j = 0; j < 4; ++j) c(4, j) = r.c[j];
  return c;
}

struct HllStar {
  ConsState u_star;
  int iterations_used = 0;
  std::array<double, 12> residual{};  // |dp* change| per sweep
  bool passthrough = false;           // degenerate sR-sL face
};

//! Star state of the path-conservative HLL solver: the conservative rows are
//! closed-form; the anisotropy row is resolved by fixed-point sweeps of the
//! path-integral terms starting from the full-segment initial guess. Five
//! sweeps minimum; strong jumps may take a few more to settle the row to
//! round-off (capped at 12).
inline HllStar hll_star_state(const ConsState& uL, const ConsState& uR,
                              const SpeedBounds& s, const GlobalField& g,
                              bool zero_noncons = false) {
  HllStar out;
  const double ds = s.sR - s.sL;
  const double scale = std::max(std::abs(s.sL), std::abs(s.sR));
  if (ds < 1e-12 * std::max(scale, 1e-300)) {
    out.u_star = uL;
    out.passthrough = true;
    return out;
  }
  const Vec8 vL = uL.to_vec(), vR = uR.to_vec();
  const Vec8 fL = flux(cons_to_prim(uL, g), g);
  const Vec8 fR = flux(cons_to_prim(uR, g), g);
  Vec8 base;
  for (int k = 0; k < 8; ++k)
    base[k] = (s.sR * vR[k] - s.sL * vL[k] - (fR[k] - fL[k])) / ds;

  Vec8 vs = base;
  if (zero_noncons) {  // diagnostic hook: Eq. (13) with C~ = 0
    out.u_star = ConsState::from_vec(vs);
    return out;
  }
  {
    const NonconsRow full = path_integral_row(uL, uR, g);
    vs[4] = base[4] - full.apply(vR - vL) / ds;
  }
  const double dp_scale = std::max({std::abs(vs[4]), std::abs(vL[4]), std::abs(vR[4]), 1.0});
  for (int it = 0; it < 12; ++it) {
    const ConsState us = ConsState::from_vec(vs);
    const NonconsRow cm = path_integral_row(uL, us, g);
    const NonconsRow cp = path_integral_row(us, uR, g);
    const double dp_new = base[4] - (cm.apply(vs - vL) + cp.apply(vR - vs)) / ds;
    out.residual[it] = std::abs(dp_new - vs[4]);
    vs[4] = dp_new;
    ++out.iterations_used;
    if (it >= 4 && out.residual[it] <= 1e-12 * dp_scale) break;
  }
  out.u_star = ConsState::from_vec(vs);
  return out;
}

struct FluctuationPair {
  Vec8 d_minus{}, d_plus{};
  ConsState u_star;
  int iterations_used = 0;
  bool hlli_fallback = false;
};

inline FluctuationPair hll_fluctuations(const ConsState& uL, const ConsState& uR,
                                        const GlobalField& g, const SpeedBounds& s) {
  FluctuationPair f;
  const HllStar star = hll_star_state(uL, uR, s, g);
  f.u_star = star.u_star;
  f.iterations_used = star.iterations_used;
  if (star.passthrough) return f;
  const Vec8 vL = uL.to_vec(), vR = uR.to_vec(), vs = star.u_star.to_vec();
  Vec8 dl, dr, total;
  for (int k = 0; k < 8; ++k) {
    dl[k] = s.sL * (vs[k] - vL[k]);
    dr[k] = s.sR * (vR[k] - vs[k]);
    total[k] = dl[k] + dr[k];
  }
  if (s.sL >= 0.0) {
    f.d_plus = total;
  } else if (s.sR <= 0.0) {
    f.d_minus = total;
  } else {
    f.d_minus = dl;
    f.d_plus = dr;
  }
  return f;
}

inline FluctuationPair hll_fluctuations(const ConsState& uL, const ConsState& uR,
                                        const GlobalField& g) {
  return hll_fluctuations(uL, uR, g,
                          speed_bounds(cons_to_prim(uL, g), cons_to_prim(uR, g), g));
}

//! Shock detector: 1 on smooth data, 0 at shocks. Compression is measured
//! against the local slow speed (kappa = 0.1, linear ramp over one more
//! kappa); a facial pressure ratio above 3 also forces 0.
inline double shock_detector(std::span<const PrimState> neighborhood,
                             const GlobalField& g) {
  constexpr double kappa = 0.1;
  const std::size_t n = neighborhood.size();
  double du_min = 0.0;
  double cs_min = std::numeric_limits<double>::infinity();
  double p_min = std::numeric_limits<double>::infinity(), p_max = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const PrimState& w = neighborhood[j];
    if (j + 1 < n) du_min = std::min(du_min, neighborhood[j + 1].ux - w.ux);
    cs_min = std::min(cs_min, wave_speeds(w, g).cs);
    p_min = std::min(p_min, w.p_avg());
    p_max = std::max(p_max, w.p_avg());
  }
  if (p_max > 3.0 * p_min) return 0.0;
  const double thresh = kappa * std::max(cs_min, 1e-300);
  if (du_min >= -thresh) return 1.0;
  if (du_min <= -2.0 * thresh) return 0.0;
  return (-du_min - 2.0 * thresh) / (-thresh);
}

//! HLLI: HLL plus the anti-diffusion built from the intermediate
//! characteristic fields at U*. Falls back to plain HLL (flagged) when the
//! eigendecomposition at U* is unusable.
inline FluctuationPair hlli_fluctuations(const ConsState& uL, const ConsState& uR,
                                         const GlobalField& g, double psi,
                                         const SpeedBounds& s) {
  FluctuationPair f = hll_fluctuations(uL, uR, g, s);
  if (psi <= 0.0 || s.sL >= 0.0 || s.sR <= 0.0) return f;
  EigenDecomp d;
  try {
    d = eigendecomp_cons(cons_to_prim(f.u_star, g), g);
  } catch (const IllConditioned&) {
    f.hlli_fallback = true;
    return f;
  } catch (const NonPhysical&) {
    f.hlli_fallback = true;
    return f;
  } catch (const NotHyperbolic&) {
    f.hlli_fallback = true;
    return f;
  }
  const Vec8 jump = uR.to_vec() - uL.to_vec();
  Vec8 chi = d.L * jump;
  for (int k = 0; k < 8; ++k) {
    const double lam = d.lambda[k];
    const double lm = std::min(lam, 0.0), lp = std::max(lam, 0.0);
    const double delta = 1.0 - lm / s.sL - lp / s.sR;
    chi[k] *= delta;
  }
  const Vec8 phi = (-psi * s.sL * s.sR / (s.sR - s.sL)) * (d.R * chi);
  f.d_minus += phi;
  for (int k = 0; k < 8; ++k) f.d_plus[k] -= phi[k];
  return f;
}

inline FluctuationPair hlli_fluctuations(const ConsState& uL, const ConsState& uR,
                                         const GlobalField& g, double psi) {
  return hlli_fluctuations(uL, uR, g, psi,
                           speed_bounds(cons_to_prim(uL, g), cons_to_prim(uR, g), g));
}

}  // namespace cgl
