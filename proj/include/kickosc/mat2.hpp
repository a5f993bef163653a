#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

namespace kickosc {

using cplx = std::complex<double>;

/// Column pair (a, b) of complex amplitudes.
struct Vec2 {
  cplx a{};
  cplx b{};

  friend Vec2 operator+(const Vec2& u, const Vec2& v) { return {u.a + v.a, u.b + v.b}; }
  friend Vec2 operator-(const Vec2& u, const Vec2& v) { return {u.a - v.a, u.b - v.b}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double norm2(const Vec2& v) { return std::sqrt(std::norm(v.a) + std::norm(v.b)); }

/// 2x2 complex matrix [[m11, m12], [m21, m22]].
struct Mat2 {
  cplx m11{1.0}, m12{}, m21{}, m22{1.0};

  static Mat2 identity() { return {}; }
  static Mat2 diagonal(cplx d1, cplx d2) { return {d1, 0.0, 0.0, d2}; }

  cplx det() const { return m11 * m22 - m12 * m21; }
  cplx trace() const { return m11 + m22; }

  /// General inverse; callers guarantee det != 0.
  Mat2 inverse() const {
    const cplx d = det();
    return {m22 / d, -m12 / d, -m21 / d, m11 / d};
  }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.m11 * y.m11 + x.m12 * y.m21, x.m11 * y.m12 + x.m12 * y.m22,
            x.m21 * y.m11 + x.m22 * y.m21, x.m21 * y.m12 + x.m22 * y.m22};
  }
  friend Vec2 operator*(const Mat2& x, const Vec2& v) {
    return {x.m11 * v.a + x.m12 * v.b, x.m21 * v.a + x.m22 * v.b};
  }
  friend Mat2 operator*(cplx s, const Mat2& x) { return {s * x.m11, s * x.m12, s * x.m21, s * x.m22}; }
  friend Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.m11 + y.m11, x.m12 + y.m12, x.m21 + y.m21, x.m22 + y.m22};
  }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {x.m11 - y.m11, x.m12 - y.m12, x.m21 - y.m21, x.m22 - y.m22};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Largest entry modulus.
inline double max_abs(const Mat2& x) {
  return std::max({std::abs(x.m11), std::abs(x.m12), std::abs(x.m21), std::abs(x.m22)});
}

/// max |x_ij - y_ij| / max(max_abs(y), floor)
inline double relative_difference(const Mat2& x, const Mat2& y, double floor = 1e-300) {
  return max_abs(x - y) / std::max(max_abs(y), floor);
}

}  // namespace kickosc
