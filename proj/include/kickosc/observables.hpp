#pragma once

// Mode function, squeezing coefficient K = |eps|^2 and coordinate variance
// along the kicked trajectory, plus the printed closed-form
// expressions for K. The printed forms are diagnostics only; the canonical
// value is always |eps(t)|^2 from the propagated coefficients.

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "kickosc/core.hpp"
#include "kickosc/trajectory.hpp"
#include "kickosc/transfer.hpp"

namespace kickosc {

/// Interval index k = min(floor(t / tau), n_kicks). A time exactly on a kick
/// belongs to the post-kick interval.
inline std::size_t interval_index(const OscillatorConfig& config, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::OutOfRange, "t must be >= 0");
  const double k = std::floor(t / config.tau);
  const auto last = static_cast<double>(config.n_kicks);
  return static_cast<std::size_t>(k < last ? k : last);
}

inline cplx epsilon_in_interval(const ModeBasis& basis, const CoefficientState& s, double t) {
  return s.a * std::exp(basis.mu1 * t) + s.b * std::exp(basis.mu2 * t);
}

inline cplx epsilon_dot_in_interval(const ModeBasis& basis, const CoefficientState& s, double t) {
  return basis.mu1 * s.a * std::exp(basis.mu1 * t) + basis.mu2 * s.b * std::exp(basis.mu2 * t);
}

inline cplx epsilon_at(const OscillatorConfig& config, const ModeBasis& basis,
                       std::span<const CoefficientState> states, double t) {
  const std::size_t k = interval_index(config, t);
  if (k >= states.size()) throw Error(ErrorCode::OutOfRange, "coefficient states do not cover t");
  return epsilon_in_interval(basis, states[k], t);
}

/// Four-term expansion of |A e^{mu1 t} + B e^{mu2 t}|^2.
inline double squeeze_coefficient_expanded(const ModeBasis& basis, const CoefficientState& s, double t) {
  const cplx m1 = basis.mu1, m2 = basis.mu2;
  const cplx sum = std::norm(s.a) * std::exp((m1 + std::conj(m1)) * t) +
                   std::norm(s.b) * std::exp((m2 + std::conj(m2)) * t) +
                   s.b * std::conj(s.a) * std::exp((m2 + std::conj(m1)) * t) +
                   s.a * std::conj(s.b) * std::exp((m1 + std::conj(m2)) * t);
  return sum.real();
}

/// Analytic mode function of a configuration: basis plus the coefficient
/// pair of every inter-kick interval.
class ModeFunction {
 public:
  explicit ModeFunction(const OscillatorConfig& config)
      : config_(config),
        basis_(mode_basis(config)),
        states_(propagate_all(basis_, config.kappa, config.tau, static_cast<std::size_t>(config.n_kicks))) {}

  /// A single kick applied to the initial conditions at t = 0+, and no
  /// further kicks regardless of config.n_kicks.
  static ModeFunction with_origin_kick(const OscillatorConfig& config) {
    OscillatorConfig c = config;
    c.n_kicks = 0;
    ModeFunction f(c);
    const Vec2 kicked = kick_matrix(f.basis_, config.kappa) * f.states_[0].vec();
    f.states_[0] = {0, kicked.a, kicked.b};
    return f;
  }

  const OscillatorConfig& config() const { return config_; }
  const ModeBasis& basis() const { return basis_; }
  const std::vector<CoefficientState>& states() const { return states_; }

  cplx epsilon(double t) const { return epsilon_at(config_, basis_, states_, t); }
  cplx epsilon_dot(double t) const { return epsilon_dot_in_interval(basis_, states_[interval_index(config_, t)], t); }
  double squeeze(double t) const { return std::norm(epsilon(t)); }
  double variance(double t) const { return variance_scale(config_, basis_) * squeeze(t); }

  TrajectorySample sample(double t) const {
    const auto& s = states_[interval_index(config_, t)];
    TrajectorySample out;
    out.t = t;
    out.epsilon = epsilon_in_interval(basis_, s, t);
    out.epsilon_dot = epsilon_dot_in_interval(basis_, s, t);
    out.k_coeff = std::norm(out.epsilon);
    out.sigma_x = variance_scale(config_, basis_) * out.k_coeff;
    return out;
  }

 private:
  OscillatorConfig config_;
  ModeBasis basis_;
  std::vector<CoefficientState> states_;
};

inline double squeeze_coefficient(const OscillatorConfig& config, double t) { return ModeFunction(config).squeeze(t); }

inline double coordinate_variance(const OscillatorConfig& config, const ModeBasis& basis, double t) {
  return variance_scale(config, basis) * squeeze_coefficient(config, t);
}

// ---------------------------------------------------------------------------
// Printed closed forms.
//
// `n` is the index the formulas carry (U_{n-1}, U_{n-2}); `shift` displaces
// every time offset (n - c) tau to (n - c + shift) tau so alternative
// interval mappings can be scanned. shift = 0 is the verbatim form.
// ---------------------------------------------------------------------------

namespace detail {

struct ChebyshevPair {
  double u1;  // U_{n-1}
  double u2;  // U_{n-2}
};

inline ChebyshevPair real_pair(std::size_t n, double x) {
  const auto [u1, u2] = chebyshev_u_pair(static_cast<long>(n), cplx{x, 0.0});
  return {u1.real(), u2.real()};
}

// Undamped expression with frequency w, q = kappa / w, chi = 2 x.
inline double undamped_terms(double w, double q, double chi, ChebyshevPair u, double t, double n, double tau,
                             double shift) {
  const double s1 = t - (n - 1.0 + shift) * tau;
  const double s2 = t - (n - 0.5 + shift) * tau;
  const double sin1 = std::sin(w * s1);
  return u.u1 * u.u1 + u.u2 * u.u2 + 2.0 * q * u.u1 * u.u1 * std::sin(2.0 * w * s1) - chi * u.u1 * u.u2 +
         4.0 * q * q * u.u1 * u.u1 * sin1 * sin1 - 2.0 * q * u.u1 * u.u2 * std::sin(2.0 * w * s2);
}

// The interval precondition (n - 1) tau <= t binds the verbatim reading only;
// shifted readings are evaluated wherever asked.
inline void require_index(std::size_t n, double t, double tau, double shift) {
  if (n < 1) throw Error(ErrorCode::OutOfRange, "closed forms need n >= 1");
  if (!(t >= 0.0)) throw Error(ErrorCode::OutOfRange, "t must be >= 0");
  const double start = (static_cast<double>(n) - 1.0) * tau;
  if (shift == 0.0 && t < start - 1e-12 * tau) throw Error(ErrorCode::OutOfRange, "t lies before (n - 1) tau");
}

}  // namespace detail

/// Undamped closed form for K after the n-index kick sequence, all six
/// printed terms.
inline double k_closed_undamped(const OscillatorConfig& config, double t, std::size_t n, double shift = 0.0) {
  const ModeBasis basis = mode_basis(config);
  if (basis.regime != DampingRegime::Undamped) throw Error(ErrorCode::WrongRegime, "requires gamma == 0");
  detail::require_index(n, t, config.tau, shift);
  const double x = basis.chi_half.real();
  return detail::undamped_terms(config.omega0, config.kappa / config.omega0, 2.0 * x, detail::real_pair(n, x), t,
                                static_cast<double>(n), config.tau, shift);
}

/// Weak-damping closed form, transcribed term by term:
///   K = e^{-2 g t} { K0 + (g/W) [A] + (g^2 / 2W^2) [B] }
/// with W = sqrt(w0^2 - g^2), q = kappa/W and K0 the undamped expression
/// evaluated with W in place of w0 and the weak-damping chi. The last line
/// of [B] carries an unmatched ')' which is dropped.
inline double k_closed_weak(const OscillatorConfig& config, double t, std::size_t n, double shift = 0.0) {
  const ModeBasis basis = mode_basis(config);
  if (basis.regime != DampingRegime::Weak) throw Error(ErrorCode::WrongRegime, "requires 0 < gamma < omega0");
  detail::require_index(n, t, config.tau, shift);

  const double g = config.gamma;
  const double w = basis.big_omega;
  const double tau = config.tau;
  const double q = config.kappa / w;
  const double x = basis.chi_half.real();
  const double chi = 2.0 * x;
  const auto u = detail::real_pair(n, x);
  const double u11 = u.u1 * u.u1;
  const double u22 = u.u2 * u.u2;
  const double u12 = u.u1 * u.u2;
  const double nn = static_cast<double>(n);
  // 2W (t - (n - c) tau), shifted
  auto ph = [&](double c) { return 2.0 * w * (t - (nn - c + shift) * tau); };

  const double k0 = detail::undamped_terms(w, q, chi, u, t, nn, tau, shift);

  const double first = 2.0 * q * u11 * std::cos(2.0 * w * tau)
                     + 2.0 * q * q * u11 * std::sin(2.0 * w * tau)
                     - 2.0 * q * u12 * std::cos(w * tau)
                     + (1.0 - q * q) * u11 * std::sin(ph(2.0))
                     + u22 * std::sin(ph(1.0))
                     - 2.0 * q * u11 * std::cos(ph(2.0))
                     - 2.0 * u12 * std::sin(ph(1.5))
                     + 2.0 * q * u12 * std::cos(ph(1.5))
                     + q * q * u11 * std::sin(ph(0.0));

  const double second = (1.0 + 2.0 * q * q) * u11 + u22 - chi * u12
                      + 2.0 * q * u11 * (std::sin(2.0 * w * tau) - q * std::cos(2.0 * w * tau))
                      - 2.0 * q * u12 * std::sin(w * tau)
                      + 2.0 * q * u11 * std::sin(ph(1.0))
                      - 2.0 * q * q * u11 * std::cos(ph(1.0))
                      - 2.0 * q * u12 * std::sin(ph(0.5))
                      + q * q * u11 * std::cos(ph(0.0))
                      - (1.0 - q * q) * u11 * std::cos(ph(2.0))
                      - 2.0 * q * u11 * std::sin(ph(2.0))
                      - u22 * std::cos(ph(1.0))
                      + 2.0 * u12 * std::cos(ph(1.5))
                      + 2.0 * q * u12 * std::sin(ph(1.5));

  return std::exp(-2.0 * g * t) * (k0 + g / w * first + g * g / (2.0 * w * w) * second);
}

/// One kick at t = 0+, weak damping:
///   K = e^{-2 g t} [K0 + (g/W)(sin 2Wt + (4/W)(kappa + g/4) sin^2 Wt)]
/// with K0 = 1 + 2q sin 2Wt + 4q^2 sin^2 Wt, the undamped single-kick value.
inline double k_single_kick(const OscillatorConfig& config, double t) {
  const ModeBasis basis = mode_basis(config);
  if (basis.regime != DampingRegime::Weak) throw Error(ErrorCode::WrongRegime, "requires 0 < gamma < omega0");
  if (!(t >= 0.0)) throw Error(ErrorCode::OutOfRange, "t must be >= 0");
  const double g = config.gamma;
  const double w = basis.big_omega;
  const double q = config.kappa / w;
  const double s = std::sin(w * t);
  const double k0 = 1.0 + 2.0 * q * std::sin(2.0 * w * t) + 4.0 * q * q * s * s;
  return std::exp(-2.0 * g * t) *
         (k0 + g / w * (std::sin(2.0 * w * t) + 4.0 / w * (config.kappa + g / 4.0) * s * s));
}

/// K must fall this far below 1 to count as squeezed (absorbs rounding in K == 1).
inline constexpr double kSqueezeMargin = 1e-12;

/// First time K drops below 1 - kSqueezeMargin. The earliest such sample is
/// bracketed with its predecessor and refined by bisection on `k_of_t` to
/// `tolerance`. Grazing contact (min K == 1) is not an onset.
inline std::optional<double> squeezing_onset(std::span<const TrajectorySample> samples,
                                             const std::function<double(double)>& k_of_t, double tolerance) {
  if (samples.empty()) throw Error(ErrorCode::EmptyInput, "no samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].k_coeff < 1.0 - kSqueezeMargin)) continue;
    if (i == 0) return samples[0].t;
    double lo = samples[i - 1].t;
    double hi = samples[i].t;
    while (hi - lo > tolerance) {
      const double mid = 0.5 * (lo + hi);
      if (k_of_t(mid) < 1.0 - kSqueezeMargin)
        hi = mid;
      else
        lo = mid;
    }
    return hi;
  }
  return std::nullopt;
}

/// Onset on the analytic path; tolerance 1e-9 tau.
inline std::optional<double> squeezing_onset(std::span<const TrajectorySample> samples, const ModeFunction& mode) {
  return squeezing_onset(samples, [&](double t) { return mode.squeeze(t); }, 1e-9 * mode.config().tau);
}

}  // namespace kickosc
