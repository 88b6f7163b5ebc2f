#pragma once

// CGL state vectors, EOS, physical flux, non-conservative coupling matrix,
// relaxation source, and the hyperbolicity-region classifier.
//
// Conventions: Gaussian units with explicit 4*pi factors. The evolved vector is
// U = (rho, rho*u, p_par - p_perp, E, By, Bz); Bx is a global constant in 1-D.

#include <cmath>
#include <optional>
#include <string>

#include "cgl/errors.hpp"
#include "cgl/small_matrix.hpp"

namespace cgl {

inline constexpr double kFourPi = 4.0 * M_PI;

struct GlobalField {
  double Bx = 0.0;
};

struct PrimState {
  double rho = 1.0;
  double ux = 0.0, uy = 0.0, uz = 0.0;
  double p_par = 1.0, p_perp = 1.0;
  double By = 0.0, Bz = 0.0;

  double dp() const { return p_par - p_perp; }
  double p_avg() const { return (2.0 * p_perp + p_par) / 3.0; }
  bool valid() const { return rho > 0.0 && p_par > 0.0 && p_perp > 0.0; }
};

struct ConsState {
  double rho = 1.0;
  double mx = 0.0, my = 0.0, mz = 0.0;
  double dp = 0.0;  // p_par - p_perp
  double E = 0.0;
  double By = 0.0, Bz = 0.0;

  Vec8 to_vec() const { return {rho, mx, my, mz, dp, E, By, Bz}; }
  static ConsState from_vec(const Vec8& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
  }
};

inline double bsq(const PrimState& w, const GlobalField& g) {
  return g.Bx * g.Bx + w.By * w.By + w.Bz * w.Bz;
}
inline double bsq(const ConsState& u, const GlobalField& g) {
  return g.Bx * g.Bx + u.By * u.By + u.Bz * u.Bz;
}

inline double eps_bsq(const GlobalField& g) {
  return 1e-14 * std::max(1.0, g.Bx * g.Bx);
}

inline ConsState prim_to_cons(const PrimState& w, const GlobalField& g) {
  ConsState u;
  u.rho = w.rho;
  u.mx = w.rho * w.ux;
  u.my = w.rho * w.uy;
  u.mz = w.rho * w.uz;
  u.dp = w.p_par - w.p_perp;
  const double usq = w.ux * w.ux + w.uy * w.uy + w.uz * w.uz;
  u.E = 0.5 * w.rho * usq + bsq(w, g) / (2.0 * kFourPi) + 1.5 * w.p_avg();
  u.By = w.By;
  u.Bz = w.Bz;
  return u;
}

inline PrimState cons_to_prim(const ConsState& u, const GlobalField& g) {
  if (!(u.rho > 0.0))
    throw NonPhysical("cons_to_prim: rho = " + std::to_string(u.rho));
  PrimState w;
  w.rho = u.rho;
  w.ux = u.mx / u.rho;
  w.uy = u.my / u.rho;
  w.uz = u.mz / u.rho;
  w.By = u.By;
  w.Bz = u.Bz;
  const double kin = 0.5 * (u.mx * u.mx + u.my * u.my + u.mz * u.mz) / u.rho;
  const double mag = bsq(u, g) / (2.0 * kFourPi);
  const double p = (2.0 / 3.0) * (u.E - kin - mag);
  w.p_par = p + (2.0 / 3.0) * u.dp;
  w.p_perp = p - u.dp / 3.0;
  if (!(w.p_par > 0.0) || !(w.p_perp > 0.0))
    throw NonPhysical("cons_to_prim: negative pressure (p_par=" +
                      std::to_string(w.p_par) + ", p_perp=" +
                      std::to_string(w.p_perp) + ")");
  return w;
}

//! Physical flux column F of the 1-D system.
inline Vec8 flux(const PrimState& w, const GlobalField& g) {
  const double B2 = bsq(w, g);
  if (B2 < eps_bsq(g)) throw DegenerateField("flux: |B|^2 ~ 0, b undefined");
  const double B = std::sqrt(B2);
  const double bx = g.Bx / B, by = w.By / B, bz = w.Bz / B;
  const double dp = w.dp();
  const double pt_mag = B2 / (2.0 * kFourPi);
  const double E = prim_to_cons(w, g).E;
  const double Bdotu = g.Bx * w.ux + w.By * w.uy + w.Bz * w.uz;
  const double udotb = w.ux * bx + w.uy * by + w.uz * bz;
  Vec8 f;
  f[0] = w.rho * w.ux;
  f[1] = w.rho * w.ux * w.ux + w.p_perp - g.Bx * g.Bx / kFourPi + pt_mag + dp * bx * bx;
  f[2] = w.rho * w.ux * w.uy - g.Bx * w.By / kFourPi + dp * bx * by;
  f[3] = w.rho * w.ux * w.uz - g.Bx * w.Bz / kFourPi + dp * bx * bz;
  f[4] = dp * w.ux;
  f[5] = (E + w.p_perp + pt_mag) * w.ux - g.Bx / kFourPi * Bdotu + dp * udotb * bx;
  f[6] = w.ux * w.By - w.uy * g.Bx;
  f[7] = w.ux * w.Bz - w.uz * g.Bx;
  return f;
}

//! Nonzero entries of row 5 (index 4) of C(U): coefficients of
//! d/dx of (rho, rho*ux, rho*uy, rho*uz).
struct NonconsRow {
  std::array<double, 4> c{};

  double apply(const Vec8& du) const {
    return c[0] * du[0] + c[1] * du[1] + c[2] * du[2] + c[3] * du[3];
  }
};

inline NonconsRow noncons_row(const PrimState& w, const GlobalField& g) {
  const double B2 = bsq(w, g);
  if (B2 < eps_bsq(g)) throw DegenerateField("noncons_row: |B|^2 ~ 0");
  const double B = std::sqrt(B2);
  const double bx = g.Bx / B, by = w.By / B, bz = w.Bz / B;
  const double q = 2.0 * w.p_par + w.p_perp;
  const double bu = bx * w.ux + by * w.uy + bz * w.uz;
  NonconsRow r;
  r.c[0] = w.p_perp * w.ux / w.rho - q * bu * bx / w.rho;
  r.c[1] = q * bx * bx / w.rho - w.p_perp / w.rho;
  r.c[2] = q * bx * by / w.rho;
  r.c[3] = q * bx * bz / w.rho;
  return r;
}

inline Mat8 noncons_matrix(const PrimState& w, const GlobalField& g) {
  Mat8 c;
  const NonconsRow r = noncons_row(w, g);
  for (int j = 0; j < 4; ++j) c(4, j) = r.c[j];
  return c;
}

//! Relaxation source S(U); zero when tau is disabled (nullopt).
inline Vec8 source(const ConsState& u, const std::optional<double>& tau) {
  Vec8 s{};
  if (tau) s[4] = -u.dp / *tau;
  return s;
}

enum class OmegaRegion { RegionI, RegionII, RegionIII, Outside };

struct OmegaClass {
  OmegaRegion region = OmegaRegion::Outside;
  double pm = 0.0, pM = 0.0;
  //! expected ordering: true -> cs <= ca (regions I, II); false -> ca <= cs (region III)
  bool slow_below_alfven = true;
};

inline OmegaClass classify_omega(const PrimState& w, const GlobalField& g) {
  const double B2_4pi = bsq(w, g) / kFourPi;
  OmegaClass oc;
  oc.pm = w.p_perp * w.p_perp / (6.0 * w.p_perp + 3.0 * B2_4pi);
  oc.pM = B2_4pi + w.p_perp;
  if (!w.valid() || w.p_par < oc.pm || w.p_par > oc.pM) {
    oc.region = OmegaRegion::Outside;
    return oc;
  }
  const double q1 = oc.pM / 4.0;
  const double q2 = oc.pM / 4.0 + 0.75 * oc.pm;
  if (w.p_par <= q1) {
    oc.region = OmegaRegion::RegionI;
  } else if (w.p_par <= q2) {
    oc.region = OmegaRegion::RegionII;
  } else {
    oc.region = OmegaRegion::RegionIII;
    oc.slow_below_alfven = false;
  }
  return oc;
}

}  // namespace cgl
