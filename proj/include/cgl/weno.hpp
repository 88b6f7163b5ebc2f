#pragma once

// WENO-AO interpolation of point values to zone faces (orders 3/5/7) and
// boundary-centered interpolation of the even flux/state derivatives used by
// the finite-difference corrections. Unit-spacing coefficient tables; the
// derivative outputs are the dx^2k-scaled quantities the scheme consumes.

#include <algorithm>
#include <cmath>

#include "cgl/errors.hpp"

namespace cgl {

namespace weno {

inline constexpr double kGammaHi = 0.85;
inline constexpr double kGammaLo = 0.05;   // split evenly over three smalls
inline constexpr double kEps = 1e-12;
inline constexpr int kPow = 4;             // AO indicator exponent (orders 5/7)

inline constexpr int stencil_radius(int order) { return (order - 1) / 2; }
inline constexpr int face_window(int order) { return order + 1; }  // 4, 6, 8

namespace tab {

// quadratic smalls {-2..0},{-1..1},{0..2}: face values at -1/2, +1/2
inline constexpr double q_face[3][2][3] = {
    {{-1.0 / 8.0, 3.0 / 4.0, 3.0 / 8.0}, {3.0 / 8.0, -5.0 / 4.0, 15.0 / 8.0}},
    {{3.0 / 8.0, 3.0 / 4.0, -1.0 / 8.0}, {-1.0 / 8.0, 3.0 / 4.0, 3.0 / 8.0}},
    {{15.0 / 8.0, -5.0 / 4.0, 3.0 / 8.0}, {3.0 / 8.0, 3.0 / 4.0, -1.0 / 8.0}}};

inline constexpr double q_beta[3][3][3] = {
    {{4.0 / 3.0, -19.0 / 6.0, 11.0 / 6.0},
     {-19.0 / 6.0, 25.0 / 3.0, -31.0 / 6.0},
     {11.0 / 6.0, -31.0 / 6.0, 10.0 / 3.0}},
    {{4.0 / 3.0, -13.0 / 6.0, 5.0 / 6.0},
     {-13.0 / 6.0, 13.0 / 3.0, -13.0 / 6.0},
     {5.0 / 6.0, -13.0 / 6.0, 4.0 / 3.0}},
    {{10.0 / 3.0, -31.0 / 6.0, 11.0 / 6.0},
     {-31.0 / 6.0, 25.0 / 3.0, -19.0 / 6.0},
     {11.0 / 6.0, -19.0 / 6.0, 4.0 / 3.0}}};

inline constexpr double hi5_face[2][5] = {
    {-5.0 / 128.0, 15.0 / 32.0, 45.0 / 64.0, -5.0 / 32.0, 3.0 / 128.0},
    {3.0 / 128.0, -5.0 / 32.0, 45.0 / 64.0, 15.0 / 32.0, -5.0 / 128.0}};

inline constexpr double hi5_beta[5][5] = {
    {20591.0 / 15120.0, -601771.0 / 120960.0, 266659.0 / 40320.0, -461113.0 / 120960.0, 98179.0 / 120960.0},
    {-601771.0 / 120960.0, 1228889.0 / 60480.0, -291313.0 / 10080.0, 1050431.0 / 60480.0, -461113.0 / 120960.0},
    {266659.0 / 40320.0, -291313.0 / 10080.0, 299531.0 / 6720.0, -291313.0 / 10080.0, 266659.0 / 40320.0},
    {-461113.0 / 120960.0, 1050431.0 / 60480.0, -291313.0 / 10080.0, 1228889.0 / 60480.0, -601771.0 / 120960.0},
    {98179.0 / 120960.0, -461113.0 / 120960.0, 266659.0 / 40320.0, -601771.0 / 120960.0, 20591.0 / 15120.0}};

inline constexpr double hi7_face[2][7] = {
    {7.0 / 1024.0, -35.0 / 512.0, 525.0 / 1024.0, 175.0 / 256.0, -175.0 / 1024.0, 21.0 / 512.0, -5.0 / 1024.0},
    {-5.0 / 1024.0, 21.0 / 512.0, -175.0 / 1024.0, 175.0 / 256.0, 525.0 / 1024.0, -35.0 / 512.0, 7.0 / 1024.0}};

inline constexpr double hi7_beta[7][7] = {
    {106172149.0 / 76640256.0, -40569912451.0 / 5109350400.0, 95150477207.0 / 5109350400.0, -175320491477.0 / 7664025600.0, 39720892571.0 / 2554675200.0, -28403918303.0 / 5109350400.0, 12551258369.0 / 15328051200.0},
    {-40569912451.0 / 5109350400.0, 121797909503.0 / 2554675200.0, -592602466937.0 / 5109350400.0, 62424794879.0 / 425779200.0, -520884143557.0 / 5109350400.0, 94883541847.0 / 2554675200.0, -28403918303.0 / 5109350400.0},
    {95150477207.0 / 5109350400.0, -592602466937.0 / 5109350400.0, 74905037549.0 / 255467520.0, -4350008585.0 / 11354112.0, 279659492083.0 / 1021870080.0, -520884143557.0 / 5109350400.0, 39720892571.0 / 2554675200.0},
    {-175320491477.0 / 7664025600.0, 62424794879.0 / 425779200.0, -4350008585.0 / 11354112.0, 198792997853.0 / 383201280.0, -4350008585.0 / 11354112.0, 62424794879.0 / 425779200.0, -175320491477.0 / 7664025600.0},
    {39720892571.0 / 2554675200.0, -520884143557.0 / 5109350400.0, 279659492083.0 / 1021870080.0, -4350008585.0 / 11354112.0, 74905037549.0 / 255467520.0, -592602466937.0 / 5109350400.0, 95150477207.0 / 5109350400.0},
    {-28403918303.0 / 5109350400.0, 94883541847.0 / 2554675200.0, -520884143557.0 / 5109350400.0, 62424794879.0 / 425779200.0, -592602466937.0 / 5109350400.0, 121797909503.0 / 2554675200.0, -40569912451.0 / 5109350400.0},
    {12551258369.0 / 15328051200.0, -28403918303.0 / 5109350400.0, 39720892571.0 / 2554675200.0, -175320491477.0 / 7664025600.0, 95150477207.0 / 5109350400.0, -40569912451.0 / 5109350400.0, 106172149.0 / 76640256.0}};

// face-centered windows at half-integer offsets
inline constexpr double fq_d2[3] = {1.0, -2.0, 1.0};  // both orange and pink
inline constexpr double fq_beta_orange[3][3] = {
    {13.0 / 12.0, -13.0 / 6.0, 13.0 / 12.0},
    {-13.0 / 6.0, 16.0 / 3.0, -19.0 / 6.0},
    {13.0 / 12.0, -19.0 / 6.0, 25.0 / 12.0}};
inline constexpr double fq_beta_pink[3][3] = {
    {25.0 / 12.0, -19.0 / 6.0, 13.0 / 12.0},
    {-19.0 / 6.0, 16.0 / 3.0, -13.0 / 6.0},
    {13.0 / 12.0, -13.0 / 6.0, 13.0 / 12.0}};

inline constexpr double f4_d2[4] = {1.0 / 2.0, -1.0 / 2.0, -1.0 / 2.0, 1.0 / 2.0};
inline constexpr double f6_d2[6] = {-5.0 / 48.0, 13.0 / 16.0, -17.0 / 24.0, -17.0 / 24.0, 13.0 / 16.0, -5.0 / 48.0};
inline constexpr double f6_d4[6] = {1.0 / 2.0, -3.0 / 2.0, 1.0, 1.0, -3.0 / 2.0, 1.0 / 2.0};
inline constexpr double f8_d2[8] = {259.0 / 11520.0, -499.0 / 2304.0, 1299.0 / 1280.0, -1891.0 / 2304.0, -1891.0 / 2304.0, 1299.0 / 1280.0, -499.0 / 2304.0, 259.0 / 11520.0};
inline constexpr double f8_d4[8] = {-7.0 / 48.0, 59.0 / 48.0, -45.0 / 16.0, 83.0 / 48.0, 83.0 / 48.0, -45.0 / 16.0, 59.0 / 48.0, -7.0 / 48.0};
inline constexpr double f8_d6[8] = {1.0 / 2.0, -5.0 / 2.0, 9.0 / 2.0, -5.0 / 2.0, -5.0 / 2.0, 9.0 / 2.0, -5.0 / 2.0, 1.0 / 2.0};

}  // namespace tab

template <int N>
inline double quad_form(const double (&m)[N][N], const double* v) {
  double s = 0.0;
  for (int i = 0; i < N; ++i) {
    double row = 0.0;
    for (int j = 0; j < N; ++j) row += m[i][j] * v[j];
    s += v[i] * row;
  }
  return s;
}

template <int N>
inline double dot(const double (&c)[N], const double* v) {
  double s = 0.0;
  for (int i = 0; i < N; ++i) s += c[i] * v[i];
  return s;
}

struct FaceValues {
  double left = 0.0;   // value at x_{i-1/2}+
  double right = 0.0;  // value at x_{i+1/2}-
};

inline FaceValues interpolate3(const double* v) {
  const double bL = (v[1] - v[0]) * (v[1] - v[0]);
  const double bR = (v[2] - v[1]) * (v[2] - v[1]);
  const double tau = std::abs(bR - bL);
  const double a0 = 1.0 + tau / (bL + kEps);
  const double a1 = 1.0 + tau / (bR + kEps);
  const double s0L = 0.5 * v[0] + 0.5 * v[1];
  const double s0R = -0.5 * v[0] + 1.5 * v[1];
  const double s1L = 1.5 * v[1] - 0.5 * v[2];
  const double s1R = 0.5 * v[1] + 0.5 * v[2];
  FaceValues f;
  {
    const double w0 = 0.75 * a0, w1 = 0.25 * a1;
    f.left = (w0 * s0L + w1 * s1L) / (w0 + w1);
  }
  {
    const double w0 = 0.25 * a0, w1 = 0.75 * a1;
    f.right = (w0 * s0R + w1 * s1R) / (w0 + w1);
  }
  return f;
}

template <int ORDER>
inline FaceValues interpolate_ao(const double* v) {
  static_assert(ORDER == 5 || ORDER == 7);
  constexpr int n = ORDER;
  const double* sm[3];
  if constexpr (ORDER == 5) {
    sm[0] = v; sm[1] = v + 1; sm[2] = v + 2;
  } else {
    sm[0] = v + 1; sm[1] = v + 2; sm[2] = v + 3;
  }
  double b[3], sL[3], sR[3];
  for (int k = 0; k < 3; ++k) {
    b[k] = quad_form<3>(tab::q_beta[k], sm[k]);
    sL[k] = dot<3>(tab::q_face[k][0], sm[k]);
    sR[k] = dot<3>(tab::q_face[k][1], sm[k]);
  }
  double hiL, hiR, bHi;
  if constexpr (ORDER == 5) {
    hiL = dot<5>(tab::hi5_face[0], v);
    hiR = dot<5>(tab::hi5_face[1], v);
    bHi = quad_form<5>(tab::hi5_beta, v);
  } else {
    hiL = dot<7>(tab::hi7_face[0], v);
    hiR = dot<7>(tab::hi7_face[1], v);
    bHi = quad_form<7>(tab::hi7_beta, v);
  }
  const double tau = std::abs(bHi - (b[0] + b[1] + b[2]) / 3.0);
  auto zw = [tau](double beta) {
    const double q = tau / (beta + kEps);
    const double q2 = q * q;
    return 1.0 + q2 * q2;
  };
  const double ah = kGammaHi * zw(bHi);
  const double a0 = kGammaLo * zw(b[0]);
  const double a1 = kGammaLo * zw(b[1]);
  const double a2 = kGammaLo * zw(b[2]);
  const double inv = 1.0 / (ah + a0 + a1 + a2);
  const double wh = ah * inv;
  const double w0 = a0 * inv, w1 = a1 * inv, w2 = a2 * inv;
  FaceValues f;
  f.left = wh / kGammaHi * (hiL - kGammaLo * (sL[0] + sL[1] + sL[2])) +
           w0 * sL[0] + w1 * sL[1] + w2 * sL[2];
  f.right = wh / kGammaHi * (hiR - kGammaLo * (sR[0] + sR[1] + sR[2])) +
            w0 * sR[0] + w1 * sR[1] + w2 * sR[2];
  return f;
}

}  // namespace weno

//! WENO-AO interpolation of a (2s+1)-point window centered on zone i to the
//! two faces of zone i.
inline weno::FaceValues weno_ao_interpolate(const double* window, int order) {
  switch (order) {
    case 3: return weno::interpolate3(window);
    case 5: return weno::interpolate_ao<5>(window);
    case 7: return weno::interpolate_ao<7>(window);
    default: throw ConfigError("weno_ao_interpolate: order must be 3, 5 or 7");
  }
}

struct BoundaryDerivatives {
  double d2 = 0.0;  // dx^2-scaled second derivative at the face
  double d4 = 0.0;  // dx^4-scaled fourth derivative (orders >= 5)
  double d6 = 0.0;  // dx^6-scaled sixth derivative (order 7)
};

//! Even derivatives at a zone boundary from the point values astride it
//! (window of 4/6/8 values for orders 3/5/7). Large-stencil values, with a
//! nonlinear fallback keyed to the orange/pink smoothness ratio so jumps do
//! not feed the derivative corrections.
inline BoundaryDerivatives boundary_derivative_interpolate(const double* win, int order) {
  using namespace weno;
  BoundaryDerivatives d;
  const double* orange;
  const double* pink;
  switch (order) {
    case 3:
      d.d2 = dot<4>(tab::f4_d2, win);
      orange = win; pink = win + 1;
      break;
    case 5:
      d.d2 = dot<6>(tab::f6_d2, win);
      d.d4 = dot<6>(tab::f6_d4, win);
      orange = win + 1; pink = win + 2;
      break;
    case 7:
      d.d2 = dot<8>(tab::f8_d2, win);
      d.d4 = dot<8>(tab::f8_d4, win);
      d.d6 = dot<8>(tab::f8_d6, win);
      orange = win + 2; pink = win + 3;
      break;
    default:
      throw ConfigError("boundary_derivative_interpolate: bad order");
  }
  const double bO = quad_form<3>(tab::fq_beta_orange, orange);
  const double bP = quad_form<3>(tab::fq_beta_pink, pink);
  const double sum = bO + bP;
  const double r = sum > 0.0 ? std::abs(bO - bP) / sum : 0.0;
  if (r <= 0.5) return d;
  const double w = std::clamp((0.9 - r) / 0.4, 0.0, 1.0);
  // scale-free weights between the two quadratics (ratio is all that matters)
  const double m = std::max({bO, bP, 1e-300});
  const double nO = bO / m + 1e-6, nP = bP / m + 1e-6;
  const double aO = nP * nP, aP = nO * nO;
  const double d2s = (aO * dot<3>(tab::fq_d2, orange) + aP * dot<3>(tab::fq_d2, pink)) / (aO + aP);
  d.d2 = w * d.d2 + (1.0 - w) * d2s;
  d.d4 *= w;
  d.d6 *= w;
  return d;
}

}  // namespace cgl
