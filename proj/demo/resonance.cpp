// Coefficient growth inside and outside a resonance tongue.
#include <cstdio>
#include <string>

#include "kickosc/kickosc.hpp"

int main() {
  using namespace kickosc;
  for (double kappa : {0.2, -0.6}) {
    OscillatorConfig config;
    config.tau = 3.0;
    config.kappa = kappa;
    const ModeBasis basis = mode_basis(config);
    std::printf("kappa=%.2f chi/2=%.6f %s\n", kappa, basis.chi_half.real(),
                std::string(to_string(classify_stability(basis.chi_half))).c_str());
    for (std::size_t n : {1u, 10u, 50u}) {
      const auto state = propagate_direct(basis, kappa, config.tau, n);
      std::printf("  n=%3zu |(A,B)| = %.6e\n", n, norm2(state.vec()));
    }
  }
}
