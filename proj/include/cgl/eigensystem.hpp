#pragma once

// Characteristic speeds, primitive- and conservative-space eigenvector
// matrices, degeneracy handling, and the linear-degeneracy diagnostics.
//
// Eigenvalue ordering is fixed throughout:
//   (ux-cf, ux-ca, ux-cs, ux, ux, ux+cs, ux+ca, ux+cf)

#include <cmath>

#include "cgl/errors.hpp"
#include "cgl/small_matrix.hpp"
#include "cgl/state.hpp"

namespace cgl {

struct WaveSpeeds {
  double ux = 0.0;
  double ca = 0.0, cs = 0.0, cf = 0.0;

  Vec8 lambdas() const {
    return {ux - cf, ux - ca, ux - cs, ux, ux, ux + cs, ux + ca, ux + cf};
  }
  double max_abs_lambda() const { return std::abs(ux) + cf; }
};

namespace detail {

//! Upsilon coefficient bundle of the closed-form magnetosonic speeds.
struct Upsilons {
  double a1, Y1, Y2, Y3, Y4, Y5, Y6;
};

inline Upsilons upsilons(const PrimState& w, const GlobalField& g) {
  const double B2 = bsq(w, g);
  const double B4 = B2 * B2;
  const double Bx2 = g.Bx * g.Bx;
  const double Bt2 = w.By * w.By + w.Bz * w.Bz;
  const double pi = M_PI;
  Upsilons y;
  y.a1 = B4 - 16.0 * pi * Bx2 * w.p_par;
  double y1sq = y.a1 * y.a1 + 8.0 * y.a1 * (Bx2 + 2.0 * Bt2) * pi * w.p_perp +
                16.0 * (Bx2 * Bx2 + 8.0 * Bx2 * Bt2 + 4.0 * Bt2 * Bt2) * pi * pi *
                    w.p_perp * w.p_perp;
  if (y1sq < 0.0) y1sq = 0.0;  // roundoff guard; analytically >= 0 in Omega
  y.Y1 = std::sqrt(y1sq);
  y.Y2 = B4 + 4.0 * pi * Bx2 * (2.0 * w.p_par + w.p_perp) + 8.0 * pi * Bt2 * w.p_perp;
  y.Y3 = 4.0 * Bx2 * pi * (4.0 * w.p_par - w.p_perp) - B4;
  y.Y4 = B4 - 4.0 * pi * Bx2 * (4.0 * w.p_par - 3.0 * w.p_perp) + 8.0 * pi * Bt2 * w.p_perp;
  y.Y5 = 4.0 * pi * w.p_perp * (3.0 * Bx2 + 4.0 * Bt2) + 3.0 * B4 -
         48.0 * pi * Bx2 * w.p_par;
  y.Y6 = B4 - 4.0 * pi * Bx2 * (4.0 * w.p_par - w.p_perp) - 8.0 * pi * Bt2 * w.p_perp;
  return y;
}

inline double clamp_radicand(double r, double scale, const char* what) {
  if (r >= 0.0) return r;
  if (r < -1e-12 * scale)
    throw NotHyperbolic(std::string(what) + ": negative radicand " + std::to_string(r));
  return 0.0;
}

}  // namespace detail

inline WaveSpeeds wave_speeds(const PrimState& w, const GlobalField& g) {
  const double B2 = bsq(w, g);
  if (B2 < eps_bsq(g)) throw DegenerateField("wave_speeds: |B|^2 ~ 0");
  const double bx2 = g.Bx * g.Bx / B2;
  WaveSpeeds s;
  s.ux = w.ux;
  const double ca2_raw = g.Bx * g.Bx / (kFourPi * w.rho) - w.dp() * bx2 / w.rho;
  const double ca_scale = g.Bx * g.Bx / (kFourPi * w.rho) + std::abs(w.dp()) * bx2 / w.rho;
  s.ca = std::sqrt(detail::clamp_radicand(ca2_raw, std::max(ca_scale, 1e-300), "c_a"));
  const auto y = detail::upsilons(w, g);
  const double denom = 8.0 * M_PI * w.rho * B2;
  s.cs = std::sqrt(detail::clamp_radicand(y.Y2 - y.Y1, y.Y2, "c_s") / denom);
  s.cf = std::sqrt((y.Y2 + y.Y1) / denom);
  return s;
}

//! Exact analytic Jacobian dU/dW of prim_to_cons.
inline Mat8 jacobian_dU_dW(const PrimState& w, const GlobalField& g) {
  Mat8 j;
  j(0, 0) = 1.0;
  j(1, 0) = w.ux; j(1, 1) = w.rho;
  j(2, 0) = w.uy; j(2, 2) = w.rho;
  j(3, 0) = w.uz; j(3, 3) = w.rho;
  j(4, 4) = 1.0;  j(4, 5) = -1.0;
  j(5, 0) = 0.5 * (w.ux * w.ux + w.uy * w.uy + w.uz * w.uz);
  j(5, 1) = w.rho * w.ux; j(5, 2) = w.rho * w.uy; j(5, 3) = w.rho * w.uz;
  j(5, 4) = 0.5; j(5, 5) = 1.0;
  j(5, 6) = w.By / kFourPi; j(5, 7) = w.Bz / kFourPi;
  j(6, 6) = 1.0;
  j(7, 7) = 1.0;
  return j;
}

struct PrimEigenvectors {
  Mat8 R;                  // columns in the fixed ordering
  bool transverse_regularized = false;
};

//! Right eigenvectors in primitive space, columns in the fixed ordering.
//! Transverse degeneracy (B_t^2 < 1e-12 |B|^2) switches to the exact
//! degenerate-limit basis with polarizations (1/sqrt2, 1/sqrt2) and its
//! orthogonal complement.
inline PrimEigenvectors right_eigenvectors_prim(const PrimState& w, const GlobalField& g) {
  const double B2 = bsq(w, g);
  if (B2 < eps_bsq(g)) throw DegenerateField("right_eigenvectors_prim: |B|^2 ~ 0");
  const double B = std::sqrt(B2);
  const double Bt2 = w.By * w.By + w.Bz * w.Bz;
  const double bx = g.Bx / B;
  const double dp = w.dp();
  const double sgn = (g.Bx >= 0.0) ? 1.0 : -1.0;
  const double af = std::sqrt(std::max(B2 / (kFourPi * w.rho) - dp / w.rho, 0.0));

  PrimEigenvectors out;
  Mat8& R = out.R;

  // entropy and anisotropy columns (3 and 4)
  R(0, 3) = 1.0;
  R(4, 4) = (1.0 - bx * bx) * dp;
  R(5, 4) = bx * bx * dp - B2 / kFourPi;
  R(6, 4) = w.By;
  R(7, 4) = w.Bz;

  auto set_alfven = [&](int col, double s, double by, double bz, double By, double Bz) {
    R(2, col) = s * bz * sgn * af;
    R(3, col) = -s * by * sgn * af;
    R(6, col) = -Bz;
    R(7, col) = By;
  };

  if (Bt2 < 1e-12 * B2) {
    out.transverse_regularized = true;
    const double ir2 = 1.0 / std::sqrt(2.0);
    set_alfven(1, -1.0, ir2, ir2, B * ir2, B * ir2);
    set_alfven(6, +1.0, ir2, ir2, B * ir2, B * ir2);
    // sonic pair (parallel sound speed) and the orthogonally polarized
    // Alfven partner fill the fast/slow slots by speed ordering
    const double cpar = std::sqrt(3.0 * w.p_par / w.rho);
    const double ca = af * std::abs(bx);
    auto set_sonic = [&](int col, double s) {
      R(0, col) = w.rho;
      R(1, col) = s * cpar;
      R(4, col) = 3.0 * w.p_par;
      R(5, col) = w.p_perp;
    };
    const int fast_m = 0, fast_p = 7, slow_m = 2, slow_p = 5;
    if (cpar >= ca) {
      set_sonic(fast_m, -1.0); set_sonic(fast_p, +1.0);
      set_alfven(slow_m, -1.0, ir2, -ir2, B * ir2, -B * ir2);
      set_alfven(slow_p, +1.0, ir2, -ir2, B * ir2, -B * ir2);
    } else {
      set_sonic(slow_m, -1.0); set_sonic(slow_p, +1.0);
      set_alfven(fast_m, -1.0, ir2, -ir2, B * ir2, -B * ir2);
      set_alfven(fast_p, +1.0, ir2, -ir2, B * ir2, -B * ir2);
    }
    return out;
  }

  const double by = w.By / B, bz = w.Bz / B;
  set_alfven(1, -1.0, by, bz, w.By, w.Bz);
  set_alfven(6, +1.0, by, bz, w.By, w.Bz);

  const auto y = detail::upsilons(w, g);
  const double a2 = 1.0 / (8.0 * M_PI * w.p_perp * B);
  const double a3 = 1.0 / (8.0 * M_PI * w.p_perp * B2);
  const double i2r2 = 1.0 / (2.0 * std::sqrt(2.0));
  const double rootf = std::sqrt(std::max(y.Y2 + y.Y1, 0.0) / (M_PI * w.rho));
  const double roots = std::sqrt(std::max(y.Y2 - y.Y1, 0.0) / (M_PI * w.rho));

  auto set_fast = [&](int col, double s) {
    R(0, col) = a2 * bx * (y.Y1 + y.Y3) * w.rho;
    R(1, col) = s * a3 * bx * i2r2 * (y.Y1 + y.Y3) * rootf;
    R(2, col) = -s * a3 * by * i2r2 * (y.Y4 - y.Y1) * rootf;
    R(3, col) = -s * a3 * bz * i2r2 * (y.Y4 - y.Y1) * rootf;
    R(4, col) = -a2 * w.p_par * bx * (y.Y5 - 3.0 * y.Y1);
    R(5, col) = -a2 * w.p_perp * bx * (y.Y6 - y.Y1);
    R(6, col) = g.Bx * w.By;
    R(7, col) = g.Bx * w.Bz;
  };
  auto set_slow = [&](int col, double s) {
    R(0, col) = a2 * bx * (y.Y3 - y.Y1) * w.rho;
    R(1, col) = s * a3 * bx * i2r2 * (y.Y3 - y.Y1) * roots;
    R(2, col) = -s * a3 * by * i2r2 * (y.Y4 + y.Y1) * roots;
    R(3, col) = -s * a3 * bz * i2r2 * (y.Y4 + y.Y1) * roots;
    R(4, col) = -a2 * w.p_par * bx * (y.Y5 + 3.0 * y.Y1);
    R(5, col) = -a2 * w.p_perp * bx * (y.Y6 + y.Y1);
    R(6, col) = g.Bx * w.By;
    R(7, col) = g.Bx * w.Bz;
  };
  set_fast(0, -1.0);
  set_fast(7, +1.0);
  set_slow(2, -1.0);
  set_slow(5, +1.0);
  return out;
}

struct EigenDecomp {
  Vec8 lambda{};
  Mat8 R, L;
  bool transverse_regularized = false;
};

//! Conservative-space decomposition: R = (dU/dW) R_prim with unit max-norm
//! columns, L = R^-1 by LU. Throws IllConditioned past cond ~ 1e12.
inline EigenDecomp eigendecomp_cons(const PrimState& w, const GlobalField& g) {
  const WaveSpeeds s = wave_speeds(w, g);
  const PrimEigenvectors ep = right_eigenvectors_prim(w, g);
  const Mat8 J = jacobian_dU_dW(w, g);

  EigenDecomp d;
  d.lambda = s.lambdas();
  d.transverse_regularized = ep.transverse_regularized;
  d.R = J * ep.R;
  for (int c = 0; c < 8; ++c) {
    double mx = 0.0;
    for (int r = 0; r < 8; ++r) mx = std::max(mx, std::abs(d.R(r, c)));
    if (mx <= 0.0) throw IllConditioned("eigendecomp_cons: zero column " + std::to_string(c));
    const double inv = 1.0 / mx;
    for (int r = 0; r < 8; ++r) d.R(r, c) *= inv;
  }
  const Lu8 lu(d.R);
  if (lu.singular || lu.cond_estimate() > 1e12)
    throw IllConditioned("eigendecomp_cons: R condition estimate too large");
  d.L = lu.inverse();
  return d;
}

enum class CharField { Entropy, Anisotropy, AlfvenPlus, AlfvenMinus };

//! grad(lambda) . R for the named linearly degenerate field (primitive space).
inline double linear_degeneracy_check(const PrimState& w, const GlobalField& g,
                                      CharField field) {
  const PrimEigenvectors ep = right_eigenvectors_prim(w, g);
  Vec8 grad{};
  int col = 3;
  switch (field) {
    case CharField::Entropy:
      grad[1] = 1.0; col = 3;
      break;
    case CharField::Anisotropy:
      grad[1] = 1.0; col = 4;
      break;
    case CharField::AlfvenPlus:
    case CharField::AlfvenMinus: {
      const double sg = (field == CharField::AlfvenPlus) ? 1.0 : -1.0;
      col = (field == CharField::AlfvenPlus) ? 6 : 1;
      const WaveSpeeds s = wave_speeds(w, g);
      if (s.ca <= 0.0) throw DegenerateField("linear_degeneracy_check: c_a = 0");
      const double B2 = bsq(w, g);
      const double B = std::sqrt(B2);
      const double bx2 = g.Bx * g.Bx / B2;
      const double by = w.By / B, bz = w.Bz / B;
      grad[0] = -sg * s.ca / (2.0 * w.rho);
      grad[1] = 1.0;
      grad[4] = -sg * bx2 / (2.0 * w.rho * s.ca);
      grad[5] = +sg * bx2 / (2.0 * w.rho * s.ca);
      grad[6] = sg * w.dp() * bx2 * by / (w.rho * B * s.ca);
      grad[7] = sg * w.dp() * bx2 * bz / (w.rho * B * s.ca);
      break;
    }
  }
  double ip = 0.0;
  for (int r = 0; r < 8; ++r) ip += grad[r] * ep.R(r, col);
  return ip;
}

}  // namespace cgl
