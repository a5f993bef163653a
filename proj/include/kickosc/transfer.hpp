#pragma once

// Transfer matrices acting on the coefficient pair (A_k, B_k) of
// eps(t) = A_k e^{mu1 t} + B_k e^{mu2 t} on the interval after the k-th kick.
//
// Canonical propagation is the iterated per-kick product
//   (A_n, B_n) = S(n) ... S(1) (A_0, B_0),   S(k) = T^{-k} M T^{k},
// which telescopes to T^{-n} (M T)^n. Because det(M T) = 1, Cayley-Hamilton
// gives (M T)^n = U_{n-1}(x) M T - U_{n-2}(x) I with x = Tr(M T) / 2.

#include <cstddef>
#include <vector>

#include "kickosc/core.hpp"
#include "kickosc/mat2.hpp"

namespace kickosc {

struct CoefficientState {
  std::size_t interval_index = 0;  // number of kicks already applied
  cplx a{};
  cplx b{};

  Vec2 vec() const { return {a, b}; }
};

/// T = diag(e^{-D tau/2}, e^{D tau/2})
inline Mat2 free_matrix(const ModeBasis& basis, double tau) { return detail::free_matrix_from(basis.big_d, tau); }

/// M = [[1 - 2k/D, -2k/D], [2k/D, 1 + 2k/D]]
inline Mat2 kick_matrix(const ModeBasis& basis, double kappa) { return detail::kick_matrix_from(basis.big_d, kappa); }

/// Jump of the coefficients across the kick at t = k tau. Derived from
/// continuity of eps and eps'(k tau+) - eps'(k tau-) = 2 kappa eps(k tau).
inline Mat2 step_matrix(const ModeBasis& basis, double kappa, double tau, std::size_t k) {
  if (k < 1) throw Error(ErrorCode::OutOfRange, "step_matrix needs k >= 1");
  const Mat2 m = kick_matrix(basis, kappa);
  const cplx phase = basis.big_d * (tau * static_cast<double>(k));
  return {m.m11, m.m12 * std::exp(phase), m.m21 * std::exp(-phase), m.m22};
}

/// States for intervals 0..n; entry k holds (A_k, B_k).
inline std::vector<CoefficientState> propagate_all(const ModeBasis& basis, double kappa, double tau, std::size_t n) {
  std::vector<CoefficientState> states;
  states.reserve(n + 1);
  states.push_back({0, basis.a0, basis.b0});
  if (n == 0) return states;
  const Mat2 m = kick_matrix(basis, kappa);
  for (std::size_t k = 1; k <= n; ++k) {
    const cplx phase = basis.big_d * (tau * static_cast<double>(k));
    const Mat2 step{m.m11, m.m12 * std::exp(phase), m.m21 * std::exp(-phase), m.m22};
    const Vec2 next = step * states.back().vec();
    states.push_back({k, next.a, next.b});
  }
  return states;
}

inline CoefficientState propagate_direct(const ModeBasis& basis, double kappa, double tau, std::size_t n) {
  return propagate_all(basis, kappa, tau, n).back();
}

/// Accumulated product S(n) ... S(1); identity for n = 0.
inline Mat2 step_product(const ModeBasis& basis, double kappa, double tau, std::size_t n) {
  Mat2 acc = Mat2::identity();
  for (std::size_t k = 1; k <= n; ++k) acc = step_matrix(basis, kappa, tau, k) * acc;
  return acc;
}

/// Chebyshev polynomial of the second kind by the three-term recurrence,
/// U_{-1} = 0, U_0 = 1, U_k = 2x U_{k-1} - U_{k-2}. Valid for any complex x;
/// grows exponentially off [-1, 1].
inline cplx chebyshev_u(long n, cplx x) {
  if (n < -1) throw Error(ErrorCode::OutOfRange, "chebyshev_u needs n >= -1");
  if (n == -1) return 0.0;
  cplx prev = 0.0;
  cplx cur = 1.0;
  for (long k = 1; k <= n; ++k) {
    const cplx next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// (U_{n-1}(x), U_{n-2}(x)) in one pass; n >= 1.
inline std::pair<cplx, cplx> chebyshev_u_pair(long n, cplx x) {
  if (n < 1) throw Error(ErrorCode::OutOfRange, "chebyshev_u_pair needs n >= 1");
  cplx lower = 0.0;  // U_{-1}
  cplx upper = 1.0;  // U_0
  for (long k = 1; k <= n - 1; ++k) {
    const cplx next = 2.0 * x * upper - lower;
    lower = upper;
    upper = next;
  }
  return {upper, lower};
}

/// (M T)^n via Cayley-Hamilton.
inline Mat2 one_period_power(const ModeBasis& basis, double kappa, double tau, std::size_t n) {
  if (n == 0) return Mat2::identity();
  const Mat2 mt = kick_matrix(basis, kappa) * free_matrix(basis, tau);
  const cplx x = 0.5 * mt.trace();
  const auto [u1, u2] = chebyshev_u_pair(static_cast<long>(n), x);
  return u1 * mt - u2 * Mat2::identity();
}

/// T^{-n} (M T)^n, equal to step_product(n).
inline Mat2 closed_form_power(const ModeBasis& basis, double kappa, double tau, std::size_t n) {
  if (n < 1) throw Error(ErrorCode::OutOfRange, "closed_form_power needs n >= 1");
  const cplx h = 0.5 * basis.big_d * (tau * static_cast<double>(n));
  return Mat2::diagonal(std::exp(h), std::exp(-h)) * one_period_power(basis, kappa, tau, n);
}

/// The four closed-form entries in their historically printed form, kept as
/// a diagnostic. Its exponents are shifted by one half period relative to
/// closed_form_power, so printed == T * closed_form_power. The unbalanced
/// parenthesis in the printed 22-entry is read as
///   (1 + 2k/D) U_{n-1} e^{-D(n-2)tau/2} - U_{n-2} e^{-D(n-1)tau/2},
/// mirroring the 11-entry. The other possible reading,
///   1 + (2k/D) U_{n-1} e^{-D(n-2)tau/2} - U_{n-2} e^{-D(n-1)tau/2},
/// breaks that symmetry and is not implemented.
inline Mat2 printed_s_matrix(const ModeBasis& basis, double kappa, double tau, std::size_t n) {
  if (n < 1) throw Error(ErrorCode::OutOfRange, "printed_s_matrix needs n >= 1");
  if (std::abs(basis.big_d) <= kDegenerateBasisTolerance)
    throw Error(ErrorCode::DegenerateBasis, "|D| too small");
  const cplx d = basis.big_d;
  const cplx x = 2.0 * kappa / d;
  const double nn = static_cast<double>(n);
  const auto [u1, u2] = chebyshev_u_pair(static_cast<long>(n), chi_half(basis, tau, kappa));
  auto e = [&](double factor) { return std::exp(d * (tau * factor)); };
  Mat2 s;
  s.m11 = (1.0 - x) * u1 * e((nn - 2.0) / 2.0) - u2 * e((nn - 1.0) / 2.0);
  s.m12 = -x * u1 * e(nn / 2.0);
  s.m21 = x * u1 * e(-nn / 2.0);
  s.m22 = (1.0 + x) * u1 * e(-(nn - 2.0) / 2.0) - u2 * e(-(nn - 1.0) / 2.0);
  return s;
}

}  // namespace kickosc
