#pragma once

// Reference integrator for eps'' + 2 gamma eps' + omega0^2 eps = 0 with
// exact velocity jumps eps' += 2 kappa eps at t = k tau. It shares no code
// with the transfer-matrix path: only the configuration and the initial
// velocity i Omega are taken from the basis.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "kickosc/core.hpp"
#include "kickosc/trajectory.hpp"

namespace kickosc::oracle {

inline constexpr int kMinStepsPerInterval = 100;

struct IntegratorSettings {
  int steps_per_interval = 10000;
  double t_end = 1.0;
  int sample_stride = 1;
  bool kick_at_origin = false;  // one extra kick at t = 0+
};

/// (Re eps, Im eps, Re eps', Im eps')
using State = std::array<double, 4>;

inline State derivative(const State& y, double gamma, double omega0_sq) {
  return {y[2], y[3], -2.0 * gamma * y[2] - omega0_sq * y[0], -2.0 * gamma * y[3] - omega0_sq * y[1]};
}

/// Classical fourth-order Runge-Kutta step.
inline State rk4_step(const State& y, double h, double gamma, double omega0_sq) {
  auto axpy = [](const State& base, double s, const State& d) {
    return State{base[0] + s * d[0], base[1] + s * d[1], base[2] + s * d[2], base[3] + s * d[3]};
  };
  const State k1 = derivative(y, gamma, omega0_sq);
  const State k2 = derivative(axpy(y, 0.5 * h, k1), gamma, omega0_sq);
  const State k3 = derivative(axpy(y, 0.5 * h, k2), gamma, omega0_sq);
  const State k4 = derivative(axpy(y, h, k3), gamma, omega0_sq);
  State out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

/// eps continuous, eps' jumps by 2 kappa eps.
inline State apply_kick(const State& y, double kappa) {
  return {y[0], y[1], y[2] + 2.0 * kappa * y[0], y[3] + 2.0 * kappa * y[1]};
}

inline TrajectorySample to_sample(const State& y, double t, double variance_scale) {
  TrajectorySample s;
  s.t = t;
  s.epsilon = {y[0], y[1]};
  s.epsilon_dot = {y[2], y[3]};
  s.k_coeff = std::norm(s.epsilon);
  s.sigma_x = variance_scale * s.k_coeff;
  return s;
}

/// Fixed step tau / steps_per_interval so every kick instant is a step
/// boundary; a kick at a sample instant is applied before sampling. Samples
/// are taken at t = 0, every `sample_stride` steps, and at t_end.
inline std::vector<TrajectorySample> integrate_trajectory(const OscillatorConfig& config, const ModeBasis& basis,
                                                          const IntegratorSettings& settings) {
  validate(config);
  if (settings.steps_per_interval < kMinStepsPerInterval)
    throw Error(ErrorCode::StepTooCoarse, "steps_per_interval must be >= 100");
  if (!(settings.t_end > 0.0) || !std::isfinite(settings.t_end))
    throw Error(ErrorCode::Validation, "t_end must be finite and > 0");
  if (settings.sample_stride < 1) throw Error(ErrorCode::Validation, "sample_stride must be >= 1");

  const std::int64_t per = settings.steps_per_interval;
  const double h = config.tau / static_cast<double>(per);
  const double w0sq = config.omega0 * config.omega0;
  const double scale = variance_scale(config, basis);
  auto time_of = [&](std::int64_t j) { return static_cast<double>(j / per) * config.tau + static_cast<double>(j % per) * h; };

  const double ratio = settings.t_end / h;
  std::int64_t full_steps = static_cast<std::int64_t>(std::floor(ratio));
  if (ratio - std::floor(ratio) > 1.0 - 1e-9) ++full_steps;  // t_end on a grid point up to rounding
  const double remainder = settings.t_end - time_of(full_steps);

  State y{1.0, 0.0, 0.0, basis.big_omega};
  if (settings.kick_at_origin) y = apply_kick(y, config.kappa);

  std::vector<TrajectorySample> out;
  out.reserve(static_cast<std::size_t>(full_steps / settings.sample_stride) + 2);
  out.push_back(to_sample(y, 0.0, scale));

  for (std::int64_t j = 1; j <= full_steps; ++j) {
    y = rk4_step(y, h, config.gamma, w0sq);
    if (j % per == 0 && j / per <= config.n_kicks) y = apply_kick(y, config.kappa);
    if (j % settings.sample_stride == 0 || (j == full_steps && remainder <= 1e-12 * h))
      out.push_back(to_sample(y, time_of(j), scale));
  }
  if (remainder > 1e-12 * h) {
    y = rk4_step(y, remainder, config.gamma, w0sq);
    out.push_back(to_sample(y, settings.t_end, scale));
  }
  return out;
}

/// |(eps' eps* - eps eps'*) e^{2 gamma t} - 2 i Omega|; the damped Wronskian
/// is conserved between kicks and across them.
inline double wronskian_residual(const TrajectorySample& s, double gamma, double big_omega) {
  const cplx w = s.epsilon_dot * std::conj(s.epsilon) - s.epsilon * std::conj(s.epsilon_dot);
  return std::abs(w * std::exp(2.0 * gamma * s.t) - cplx{0.0, 2.0 * big_omega});
}

}  // namespace kickosc::oracle
