#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

#include "cgl/errors.hpp"

namespace cgl {

inline constexpr int kNVar = 8;

using Vec8 = std::array<double, 8>;

inline Vec8 operator+(const Vec8& a, const Vec8& b) {
  Vec8 r;
  for (int i = 0; i < 8; ++i) r[i] = a[i] + b[i];
  return r;
}
inline Vec8 operator-(const Vec8& a, const Vec8& b) {
  Vec8 r;
  for (int i = 0; i < 8; ++i) r[i] = a[i] - b[i];
  return r;
}
inline Vec8 operator*(double s, const Vec8& a) {
  Vec8 r;
  for (int i = 0; i < 8; ++i) r[i] = s * a[i];
  return r;
}
inline Vec8& operator+=(Vec8& a, const Vec8& b) {
  for (int i = 0; i < 8; ++i) a[i] += b[i];
  return a;
}
inline double max_abs(const Vec8& a) {
  double m = 0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

//! Dense 8x8, row major.
struct Mat8 {
  std::array<std::array<double, 8>, 8> m{};

  double& operator()(int i, int j) { return m[i][j]; }
  double operator()(int i, int j) const { return m[i][j]; }

  static Mat8 identity() {
    Mat8 a;
    for (int i = 0; i < 8; ++i) a(i, i) = 1.0;
    return a;
  }

  Vec8 operator*(const Vec8& v) const {
    Vec8 r{};
    for (int i = 0; i < 8; ++i) {
      double s = 0;
      for (int j = 0; j < 8; ++j) s += m[i][j] * v[j];
      r[i] = s;
    }
    return r;
  }

  Mat8 operator*(const Mat8& b) const {
    Mat8 r;
    for (int i = 0; i < 8; ++i)
      for (int k = 0; k < 8; ++k) {
        const double a = m[i][k];
        if (a == 0.0) continue;
        for (int j = 0; j < 8; ++j) r(i, j) += a * b(k, j);
      }
    return r;
  }
};

//! LU factorization with partial pivoting; also provides a cheap condition estimate.
struct Lu8 {
  Mat8 lu;
  std::array<int, 8> piv{};
  bool singular = false;

  explicit Lu8(const Mat8& a) : lu(a) {
    for (int i = 0; i < 8; ++i) piv[i] = i;
    for (int k = 0; k < 8; ++k) {
      int p = k;
      double best = std::abs(lu(k, k));
      for (int i = k + 1; i < 8; ++i)
        if (std::abs(lu(i, k)) > best) { best = std::abs(lu(i, k)); p = i; }
      if (best == 0.0) { singular = true; return; }
      if (p != k) { std::swap(lu.m[p], lu.m[k]); std::swap(piv[p], piv[k]); }
      const double inv = 1.0 / lu(k, k);
      for (int i = k + 1; i < 8; ++i) {
        const double f = lu(i, k) * inv;
        lu(i, k) = f;
        for (int j = k + 1; j < 8; ++j) lu(i, j) -= f * lu(k, j);
      }
    }
  }

  //! ratio of extreme pivots; cheap lower-bound style estimate of cond(A).
  double cond_estimate() const {
    double mx = 0, mn = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 8; ++i) {
      const double d = std::abs(lu(i, i));
      mx = std::max(mx, d);
      mn = std::min(mn, d);
    }
    return mn > 0 ? mx / mn : std::numeric_limits<double>::infinity();
  }

  Vec8 solve(const Vec8& b) const {
    Vec8 x;
    for (int i = 0; i < 8; ++i) x[i] = b[piv[i]];
    for (int i = 1; i < 8; ++i) {
      double s = x[i];
      for (int j = 0; j < i; ++j) s -= lu(i, j) * x[j];
      x[i] = s;
    }
    for (int i = 7; i >= 0; --i) {
      double s = x[i];
      for (int j = i + 1; j < 8; ++j) s -= lu(i, j) * x[j];
      x[i] = s / lu(i, i);
    }
    return x;
  }

  Mat8 inverse() const {
    Mat8 inv;
    for (int c = 0; c < 8; ++c) {
      Vec8 e{};
      e[c] = 1.0;
      Vec8 col = solve(e);
      for (int r = 0; r < 8; ++r) inv(r, c) = col[r];
    }
    return inv;
  }
};

}  // namespace cgl
