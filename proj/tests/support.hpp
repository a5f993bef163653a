#pragma once

// Test-only helpers: random configurations and reference computations that
// avoid the library's transfer-matrix code path.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "kickosc/core.hpp"

namespace kickosc::testing {

inline constexpr double pi = std::numbers::pi;

/// Coefficients (A, B) of A e^{mu1 t} + B e^{mu2 t} matching eps, eps' at t,
/// by Cramer's rule on the 2x2 Wronskian system.
inline std::pair<cplx, cplx> coefficients_from_state(const ModeBasis& b, double t, cplx eps, cplx eps_dot) {
  const cplx e1 = std::exp(b.mu1 * t), e2 = std::exp(b.mu2 * t);
  const cplx det = e1 * b.mu2 * e2 - e2 * b.mu1 * e1;
  const cplx a = (eps * b.mu2 * e2 - e2 * eps_dot) / det;
  const cplx bb = (e1 * eps_dot - b.mu1 * e1 * eps) / det;
  return {a, bb};
}

/// Kick-free damped solution with eps(t0) = x0, eps'(t0) = v0, written with
/// real trigonometric/hyperbolic functions rather than the exponential basis.
inline std::pair<cplx, cplx> free_flow(double omega0, double gamma, double dt, cplx x0, cplx v0) {
  const double e = std::exp(-gamma * dt);
  if (gamma < omega0) {
    const double w = std::sqrt(omega0 * omega0 - gamma * gamma);
    const double c = std::cos(w * dt), s = std::sin(w * dt);
    const cplx x = e * (x0 * c + (v0 + gamma * x0) * s / w);
    const cplx v = e * (v0 * c - (gamma * v0 + omega0 * omega0 * x0) * s / w);
    return {x, v};
  }
  const double w = std::sqrt(gamma * gamma - omega0 * omega0);
  const double c = std::cosh(w * dt), s = std::sinh(w * dt);
  const cplx x = e * (x0 * c + (v0 + gamma * x0) * s / w);
  const cplx v = e * (v0 * c - (gamma * v0 + omega0 * omega0 * x0) * s / w);
  return {x, v};
}

/// eps(t) by alternating exact free flow and velocity jumps; an independent
/// analytic reference for the kicked trajectory.
inline cplx stepped_epsilon(const OscillatorConfig& c, double omega_eff, double t, bool kick_at_origin = false) {
  cplx x = 1.0, v{0.0, omega_eff};
  if (kick_at_origin) v += 2.0 * c.kappa * x;
  double now = 0.0;
  for (int k = 1; k <= c.n_kicks && k * c.tau <= t; ++k) {
    std::tie(x, v) = free_flow(c.omega0, c.gamma, k * c.tau - now, x, v);
    v += 2.0 * c.kappa * x;
    now = k * c.tau;
  }
  return free_flow(c.omega0, c.gamma, t - now, x, v).first;
}

enum class RegimeChoice { Undamped, Weak, Strong };

/// Random valid configuration in the requested regime.
inline OscillatorConfig random_config(std::mt19937_64& rng, RegimeChoice regime, int max_kicks = 20) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  OscillatorConfig c;
  c.omega0 = 0.5 + 1.5 * u(rng);
  switch (regime) {
    case RegimeChoice::Undamped: c.gamma = 0.0; break;
    case RegimeChoice::Weak: c.gamma = c.omega0 * (0.02 + 0.9 * u(rng)); break;
    case RegimeChoice::Strong: c.gamma = c.omega0 * (1.1 + 1.5 * u(rng)); break;
  }
  c.tau = 0.2 + 2.0 * u(rng);
  c.kappa = -1.0 + 2.0 * u(rng);
  c.n_kicks = std::uniform_int_distribution<int>(0, max_kicks)(rng);
  return c;
}

inline RegimeChoice regime_at(int i) { return static_cast<RegimeChoice>(i % 3); }

}  // namespace kickosc::testing
