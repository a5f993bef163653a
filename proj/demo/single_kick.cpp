// One kick of strength 0.5 at t = pi/2 on an undamped unit oscillator:
// the analytic mode function and the integrator agree on eps(pi) = -1 + i.
#include <cstdio>
#include <numbers>

#include "kickosc/kickosc.hpp"

int main() {
  using namespace kickosc;
  OscillatorConfig config;
  config.kappa = 0.5;
  config.tau = std::numbers::pi / 2;
  config.n_kicks = 1;

  const ModeFunction mode(config);
  const auto s = mode.sample(std::numbers::pi);
  std::printf("analytic   eps(pi) = %+.12f %+.12fi   K = %.12f\n", s.epsilon.real(), s.epsilon.imag(), s.k_coeff);

  oracle::IntegratorSettings settings;
  settings.t_end = std::numbers::pi;
  const auto traj = oracle::integrate_trajectory(config, mode.basis(), settings);
  const auto& last = traj.back();
  std::printf("integrator eps(pi) = %+.12f %+.12fi   K = %.12f\n", last.epsilon.real(), last.epsilon.imag(),
              last.k_coeff);

  std::vector<TrajectorySample> grid;
  for (int i = 0; i <= 400; ++i) grid.push_back(mode.sample(4.0 * std::numbers::pi * i / 400));
  if (const auto onset = squeezing_onset(grid, mode)) std::printf("squeezing onset at t = %.9f\n", *onset);
}
