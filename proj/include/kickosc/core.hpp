#pragma once

// Physical configuration of the kicked damped oscillator and the
// regime-dependent exponential basis of its mode function
//
//   eps'' + 2 gamma eps' + omega(t)^2 eps = 0,
//   omega(t)^2 = omega0^2 - 2 kappa sum_{k=1}^{n_kicks} delta(t - k tau),
//   eps(0) = 1, eps'(0) = i Omega.

#include <cmath>
#include <complex>
#include <string>
#include <string_view>

#include "kickosc/error.hpp"
#include "kickosc/mat2.hpp"

namespace kickosc {

inline constexpr int kMaxKicks = 100000;
inline constexpr double kCriticalDampingTolerance = 1e-12;
inline constexpr double kDegenerateBasisTolerance = 1e-12;

struct OscillatorConfig {
  double omega0 = 1.0;
  double gamma = 0.0;
  double kappa = 0.0;
  double tau = 1.0;
  int n_kicks = 0;  // kicks at t = k tau, k = 1..n_kicks
  double hbar = 1.0;
  double mass = 1.0;

  friend bool operator==(const OscillatorConfig&, const OscillatorConfig&) = default;
};

enum class DampingRegime { Undamped, Weak, Strong };

constexpr std::string_view to_string(DampingRegime regime) {
  switch (regime) {
    case DampingRegime::Undamped: return "undamped";
    case DampingRegime::Weak: return "weak";
    case DampingRegime::Strong: return "strong";
  }
  return "unknown";
}

inline bool is_critical(double omega0, double gamma) {
  return std::abs(gamma - omega0) <= kCriticalDampingTolerance * omega0;
}

inline DampingRegime classify_regime(double omega0, double gamma) {
  if (!(omega0 > 0.0) || !std::isfinite(omega0))
    throw Error(ErrorCode::Validation, "omega0 must be finite and > 0");
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw Error(ErrorCode::Validation, "gamma must be finite and >= 0");
  if (is_critical(omega0, gamma))
    throw Error(ErrorCode::CriticalDamping, "gamma == omega0 makes the exponents degenerate (D = 0)");
  if (gamma == 0.0) return DampingRegime::Undamped;
  return gamma < omega0 ? DampingRegime::Weak : DampingRegime::Strong;
}

/// Throws Error(Validation) naming the first violated constraint,
/// or Error(CriticalDamping) for gamma == omega0.
inline void validate(const OscillatorConfig& c) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::Validation, what);
  };
  require(std::isfinite(c.omega0) && c.omega0 > 0.0, "omega0 > 0 (finite)");
  require(std::isfinite(c.gamma) && c.gamma >= 0.0, "gamma >= 0 (finite)");
  require(std::isfinite(c.kappa), "kappa finite");
  require(std::isfinite(c.tau) && c.tau > 0.0, "tau > 0 (finite)");
  require(c.n_kicks >= 0, "n_kicks >= 0");
  require(c.n_kicks <= kMaxKicks, "n_kicks <= 100000");
  require(std::isfinite(c.hbar) && c.hbar > 0.0, "hbar > 0 (finite)");
  require(std::isfinite(c.mass) && c.mass > 0.0, "mass > 0 (finite)");
  if (is_critical(c.omega0, c.gamma))
    throw Error(ErrorCode::CriticalDamping, "critical damping gamma == omega0 is not supported");
}

/// eps(t) = A e^{mu1 t} + B e^{mu2 t} on each inter-kick interval.
struct ModeBasis {
  DampingRegime regime = DampingRegime::Undamped;
  cplx mu1{};
  cplx mu2{};
  cplx big_d{};         // mu2 - mu1
  double big_omega = 0;  // effective frequency, real in every regime
  cplx a0{};
  cplx b0{};
  cplx chi_half{};  // half trace of the one-period matrix (kick * free)
};

namespace detail {

// diag(e^{-D tau/2}, e^{D tau/2})
inline Mat2 free_matrix_from(cplx big_d, double tau) {
  const cplx h = 0.5 * big_d * tau;
  return Mat2::diagonal(std::exp(-h), std::exp(h));
}

inline Mat2 kick_matrix_from(cplx big_d, double kappa) {
  if (std::abs(big_d) <= kDegenerateBasisTolerance)
    throw Error(ErrorCode::DegenerateBasis, "|D| too small for the kick matrix");
  const cplx x = 2.0 * kappa / big_d;
  return {1.0 - x, -x, x, 1.0 + x};
}

}  // namespace detail

/// 1/2 Tr(M T), built from the kick and free-evolution matrices.
inline cplx chi_half(const ModeBasis& basis, double tau, double kappa) {
  const Mat2 mt = detail::kick_matrix_from(basis.big_d, kappa) * detail::free_matrix_from(basis.big_d, tau);
  return 0.5 * mt.trace();
}

/// Regime closed form: cos(Omega tau) + (kappa/Omega) sin(Omega tau), with
/// cosh/sinh under strong damping.
inline double chi_half_closed_form(DampingRegime regime, double big_omega, double tau, double kappa) {
  const double x = big_omega * tau;
  if (regime == DampingRegime::Strong) return std::cosh(x) + kappa / big_omega * std::sinh(x);
  return std::cos(x) + kappa / big_omega * std::sin(x);
}

inline ModeBasis mode_basis(const OscillatorConfig& config) {
  validate(config);
  const double w0 = config.omega0;
  const double g = config.gamma;
  const cplx i{0.0, 1.0};

  ModeBasis basis;
  basis.regime = classify_regime(w0, g);
  switch (basis.regime) {
    case DampingRegime::Undamped:
      basis.big_omega = w0;
      basis.mu1 = i * w0;
      basis.mu2 = -i * w0;
      basis.a0 = 1.0;
      basis.b0 = 0.0;
      break;
    case DampingRegime::Weak: {
      const double om = std::sqrt((w0 - g) * (w0 + g));
      basis.big_omega = om;
      basis.mu1 = cplx{-g, om};
      basis.mu2 = cplx{-g, -om};
      const double r = g / (2.0 * om);
      basis.a0 = cplx{1.0, -r};
      basis.b0 = cplx{0.0, r};
      break;
    }
    case DampingRegime::Strong: {
      const double om = std::sqrt((g - w0) * (g + w0));
      basis.big_omega = om;
      // -g + om without cancellation when gamma >> omega0
      basis.mu1 = cplx{-w0 * w0 / (g + om), 0.0};
      basis.mu2 = cplx{-g - om, 0.0};
      const double r = g / (2.0 * om);
      basis.a0 = cplx{0.5 + r, 0.5};
      basis.b0 = cplx{0.5 - r, -0.5};
      break;
    }
  }
  basis.big_d = basis.mu2 - basis.mu1;
  basis.chi_half = chi_half(basis, config.tau, config.kappa);
  return basis;
}

}  // namespace kickosc
