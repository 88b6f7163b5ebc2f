#pragma once

// Shared test utilities: random Omega-state sampling and the quasilinear
// matrix assembled independently from the primitive-variable display, used as
// the eigenvector residual oracle.

#include <random>

#include "cgl/eigensystem.hpp"
#include "cgl/state.hpp"

namespace cgltest {

using namespace cgl;

//! Random state inside Omega, bounded away from the transverse and normal
//! field degeneracies so the closed-form eigenvectors are well conditioned.
inline PrimState random_omega_state(std::mt19937& rng, GlobalField& g) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (;;) {
    PrimState w;
    w.rho = 0.1 + 2.9 * U(rng);
    w.ux = -2.0 + 4.0 * U(rng);
    w.uy = -2.0 + 4.0 * U(rng);
    w.uz = -2.0 + 4.0 * U(rng);
    g.Bx = -3.0 + 6.0 * U(rng);
    w.By = -3.0 + 6.0 * U(rng);
    w.Bz = -3.0 + 6.0 * U(rng);
    const double B2 = bsq(w, g);
    if (B2 < 0.3) continue;
    if (g.Bx * g.Bx < 0.02 * B2) continue;                 // keep |bx| away from 0
    if (w.By * w.By + w.Bz * w.Bz < 1e-3 * B2) continue;   // and B_t away from 0
    w.p_perp = 0.05 + 2.95 * U(rng);
    const OmegaClass oc = classify_omega(
        PrimState{w.rho, 0, 0, 0, w.p_perp, w.p_perp, w.By, w.Bz}, g);
    const double lo = oc.pm, hi = oc.pM;
    if (!(hi > lo)) continue;
    w.p_par = lo + (0.02 + 0.96 * U(rng)) * (hi - lo);
    if (!(w.p_par > 0.0)) continue;
    // avoid near-coincident fast/slow speeds where columns lose rank
    const WaveSpeeds s = wave_speeds(w, g);
    if (s.cf - s.cs < 1e-3 * s.cf) continue;
    if (s.cs < 1e-3 * s.cf) continue;
    return w;
  }
}

//! A facing pair sharing one global field, both inside Omega.
inline std::pair<PrimState, PrimState> random_omega_pair(std::mt19937& rng,
                                                         GlobalField& g) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const PrimState wL = random_omega_state(rng, g);
  for (;;) {
    PrimState wR = wL;
    wR.rho *= 0.5 + U(rng);
    wR.ux += -0.5 + U(rng);
    wR.uy += -0.5 + U(rng);
    wR.uz += -0.5 + U(rng);
    wR.By *= 0.8 + 0.4 * U(rng);
    wR.Bz *= 0.8 + 0.4 * U(rng);
    wR.p_perp *= 0.7 + 0.6 * U(rng);
    const double B2 = bsq(wR, g);
    if (wR.By * wR.By + wR.Bz * wR.Bz < 1e-3 * B2) continue;
    const OmegaClass oc = classify_omega(
        PrimState{wR.rho, 0, 0, 0, wR.p_perp, wR.p_perp, wR.By, wR.Bz}, g);
    if (!(oc.pM > oc.pm)) continue;
    wR.p_par = oc.pm + (0.05 + 0.9 * U(rng)) * (oc.pM - oc.pm);
    if (!(wR.p_par > 0.0)) continue;
    const WaveSpeeds s = wave_speeds(wR, g);
    if (s.cf - s.cs < 1e-3 * s.cf || s.cs < 1e-3 * s.cf) continue;
    return {wL, wR};
  }
}

//! Quasilinear matrix A(W) transcribed from its displayed form (independent
//! of the eigensystem implementation).
inline Mat8 quasilinear_A(const PrimState& w, const GlobalField& g) {
  const double B2 = bsq(w, g);
  const double B = std::sqrt(B2);
  const double bx = g.Bx / B, by = w.By / B, bz = w.Bz / B;
  const double dp = w.p_par - w.p_perp;
  const double fp = kFourPi;
  Mat8 a;
  for (int i = 0; i < 8; ++i) a(i, i) = w.ux;
  a(0, 1) = w.rho;
  a(1, 4) = bx * bx / w.rho;
  a(1, 5) = (1.0 - bx * bx) / w.rho;
  a(1, 6) = w.By / (fp * w.rho) - 2.0 * bx * bx * by * dp / (w.rho * B);
  a(1, 7) = w.Bz / (fp * w.rho) - 2.0 * bx * bx * bz * dp / (w.rho * B);
  a(2, 4) = bx * by / w.rho;
  a(2, 5) = -bx * by / w.rho;
  a(2, 6) = bx * (1.0 - 2.0 * by * by) * dp / (w.rho * B) - g.Bx / (fp * w.rho);
  a(2, 7) = -2.0 * bx * by * bz * dp / (w.rho * B);
  a(3, 4) = bx * bz / w.rho;
  a(3, 5) = -bx * bz / w.rho;
  a(3, 6) = -2.0 * bx * by * bz * dp / (w.rho * B);
  a(3, 7) = bx * (1.0 - 2.0 * bz * bz) * dp / (w.rho * B) - g.Bx / (fp * w.rho);
  a(4, 1) = w.p_par * (1.0 + 2.0 * bx * bx);
  a(4, 2) = 2.0 * w.p_par * bx * by;
  a(4, 3) = 2.0 * w.p_par * bx * bz;
  a(5, 1) = w.p_perp * (2.0 - bx * bx);
  a(5, 2) = -w.p_perp * bx * by;
  a(5, 3) = -w.p_perp * bx * bz;
  a(6, 1) = w.By;
  a(6, 2) = -g.Bx;
  a(7, 1) = w.Bz;
  a(7, 3) = -g.Bx;
  return a;
}

inline double frob(const Mat8& m) {
  double s = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

inline Vec8 prim_vec(const PrimState& w) {
  return {w.rho, w.ux, w.uy, w.uz, w.p_par, w.p_perp, w.By, w.Bz};
}

inline PrimState prim_from_vec(const Vec8& v) {
  return PrimState{v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
}

}  // namespace cgltest
