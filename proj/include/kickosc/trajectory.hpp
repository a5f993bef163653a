#pragma once

#include <complex>

#include "kickosc/core.hpp"

namespace kickosc {

/// One point of a mode-function trajectory, from either the analytic path
/// or the integrator.
struct TrajectorySample {
  double t = 0.0;
  cplx epsilon{};
  cplx epsilon_dot{};
  double k_coeff = 0.0;  // squeezing coefficient |eps|^2
  double sigma_x = 0.0;  // coordinate variance, hbar / (2 m Omega) * K
};

/// hbar / (2 m Omega), the coordinate variance of the initial coherent state.
inline double variance_scale(const OscillatorConfig& config, const ModeBasis& basis) {
  return config.hbar / (2.0 * config.mass * basis.big_omega);
}

}  // namespace kickosc
