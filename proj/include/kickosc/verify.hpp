#pragma once

// Cross-check of the canonical transfer-matrix path against the integrator,
// the printed closed forms and the algebraic identities the path relies on.
// Only canonical-vs-integrator disagreement counts as a failure; deviations
// of the printed forms are measured and reported.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kickosc/core.hpp"
#include "kickosc/csv.hpp"
#include "kickosc/observables.hpp"
#include "kickosc/oracle.hpp"
#include "kickosc/sweep.hpp"
#include "kickosc/transfer.hpp"

namespace kickosc {

struct VerifyOptions {
  double t_end = 1.0;
  std::size_t samples = 1001;  // approximate number of compared time points
  int steps_per_interval = 10000;
  double tolerance = 1e-6;  // on max |K_canonical - K_oracle| / max(1, max K)
};

/// One candidate reading of the printed K formula: index n = k + index_offset
/// for a time in interval k, and every (n - c) tau offset moved by `shift`.
struct OffsetCandidate {
  int index_offset = 1;
  double shift = 0.0;
  std::size_t points = 0;
  double max_deviation = std::numeric_limits<double>::quiet_NaN();
};

struct VerifyRow {
  double t = 0.0;
  double k_canonical = 0.0;
  double k_oracle = 0.0;
  double k_printed = std::numeric_limits<double>::quiet_NaN();
  double wronskian_residual = 0.0;
};

struct VerifyReport {
  OscillatorConfig config;
  ModeBasis basis;
  StabilityClass stability = StabilityClass::Parabolic;
  VerifyOptions options;

  double max_abs_canonical_vs_oracle = 0.0;
  double max_k_canonical = 0.0;
  double canonical_vs_oracle = 0.0;  // scaled metric compared with tolerance
  bool passed = false;

  std::string printed_form;  // "undamped", "weak" or "none"
  double max_printed_vs_canonical = std::numeric_limits<double>::quiet_NaN();
  std::vector<OffsetCandidate> offset_scan;

  double max_step_det_residual = 0.0;
  double product_det_residual = 0.0;
  double closed_form_vs_direct = 0.0;  // relative, on (A_n, B_n)
  double printed_s_vs_product = std::numeric_limits<double>::quiet_NaN();
  double printed_s_vs_free_times_product = std::numeric_limits<double>::quiet_NaN();
  double max_wronskian_residual = 0.0;
  double max_pell_residual = 0.0;

  // weak damping only: kick at t = 0+
  double single_kick_printed_vs_canonical = std::numeric_limits<double>::quiet_NaN();
  double single_kick_canonical_vs_oracle = std::numeric_limits<double>::quiet_NaN();

  std::vector<VerifyRow> rows;
  std::vector<VerifyRow> probes;  // at t = k tau, k = 1..n_kicks + 1
};

/// Printed K for a time in interval k under the default reading n = k + 1;
/// NaN when the regime has no printed form.
inline double printed_k(const OscillatorConfig& config, DampingRegime regime, double t, std::size_t k,
                        int index_offset = 1, double shift = 0.0) {
  const long n = static_cast<long>(k) + index_offset;
  if (n < 1) return std::numeric_limits<double>::quiet_NaN();
  try {
    if (regime == DampingRegime::Undamped) return k_closed_undamped(config, t, static_cast<std::size_t>(n), shift);
    if (regime == DampingRegime::Weak) return k_closed_weak(config, t, static_cast<std::size_t>(n), shift);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::OutOfRange) throw;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

namespace detail {

// Largest divisor of `per` not above `target`, so kick instants are samples.
inline int sample_stride_for(int per, double target) {
  int d = std::clamp(static_cast<int>(std::floor(target)), 1, per);
  while (per % d != 0) --d;
  return d;
}

}  // namespace detail

inline VerifyReport verify(const OscillatorConfig& config, const VerifyOptions& options) {
  VerifyReport r;
  r.config = config;
  r.options = options;
  const ModeFunction mode(config);
  r.basis = mode.basis();
  r.stability = classify_stability(r.basis.chi_half);
  const auto n = static_cast<std::size_t>(config.n_kicks);
  const double tau = config.tau;

  // canonical vs integrator
  const double total_steps = options.t_end / tau * options.steps_per_interval;
  const double target_stride = total_steps / static_cast<double>(std::max<std::size_t>(options.samples, 2) - 1);
  oracle::IntegratorSettings settings;
  settings.steps_per_interval = options.steps_per_interval;
  settings.t_end = options.t_end;
  settings.sample_stride = detail::sample_stride_for(options.steps_per_interval, target_stride);
  const auto trajectory = oracle::integrate_trajectory(config, r.basis, settings);

  r.printed_form = r.basis.regime == DampingRegime::Undamped ? "undamped"
                   : r.basis.regime == DampingRegime::Weak   ? "weak"
                                                             : "none";
  double printed_max = 0.0;
  bool any_printed = false;
  r.rows.reserve(trajectory.size());
  for (const auto& s : trajectory) {
    VerifyRow row;
    row.t = s.t;
    row.k_oracle = s.k_coeff;
    row.k_canonical = mode.squeeze(s.t);
    row.wronskian_residual = oracle::wronskian_residual(s, config.gamma, r.basis.big_omega);
    row.k_printed = printed_k(config, r.basis.regime, s.t, interval_index(config, s.t));
    r.max_abs_canonical_vs_oracle = std::max(r.max_abs_canonical_vs_oracle, std::abs(row.k_canonical - row.k_oracle));
    r.max_k_canonical = std::max(r.max_k_canonical, row.k_canonical);
    r.max_wronskian_residual = std::max(r.max_wronskian_residual, row.wronskian_residual);
    if (!std::isnan(row.k_printed)) {
      any_printed = true;
      printed_max = std::max(printed_max, std::abs(row.k_printed - row.k_canonical));
    }
    r.rows.push_back(row);
  }
  r.canonical_vs_oracle = r.max_abs_canonical_vs_oracle / std::max(1.0, r.max_k_canonical);
  r.passed = r.canonical_vs_oracle <= options.tolerance;
  if (any_printed) r.max_printed_vs_canonical = printed_max;

  // alternative index mappings of the printed form
  if (r.basis.regime != DampingRegime::Strong) {
    for (int index_offset : {1, 0})
      for (double shift : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        OffsetCandidate c{index_offset, shift, 0, 0.0};
        for (const auto& row : r.rows) {
          const double p = printed_k(config, r.basis.regime, row.t, interval_index(config, row.t), index_offset, shift);
          if (std::isnan(p)) continue;
          ++c.points;
          c.max_deviation = std::max(c.max_deviation, std::abs(p - row.k_canonical));
        }
        if (c.points == 0) c.max_deviation = std::numeric_limits<double>::quiet_NaN();
        r.offset_scan.push_back(c);
      }
  }

  // probes at interval boundaries
  const std::size_t per_sample = static_cast<std::size_t>(options.steps_per_interval / settings.sample_stride);
  for (std::size_t k = 1; k <= n + 1; ++k) {
    const std::size_t idx = k * per_sample;
    if (idx >= trajectory.size() || trajectory[idx].t > options.t_end) break;
    VerifyRow probe = r.rows[idx];
    probe.t = static_cast<double>(k) * tau;
    probe.k_canonical = mode.squeeze(probe.t);
    probe.k_printed = printed_k(config, r.basis.regime, probe.t, interval_index(config, probe.t));
    r.probes.push_back(probe);
  }

  // algebraic identities
  for (std::size_t k = 1; k <= n; ++k)
    r.max_step_det_residual =
        std::max(r.max_step_det_residual, std::abs(step_matrix(r.basis, config.kappa, tau, k).det() - 1.0));
  if (n >= 1) {
    const Mat2 product = step_product(r.basis, config.kappa, tau, n);
    r.product_det_residual = std::abs(product.det() - 1.0);
    const Vec2 direct = mode.states().back().vec();
    const Vec2 closed = closed_form_power(r.basis, config.kappa, tau, n) * Vec2{r.basis.a0, r.basis.b0};
    r.closed_form_vs_direct = norm2(closed - direct) / std::max(norm2(direct), 1e-300);
    const Mat2 printed = printed_s_matrix(r.basis, config.kappa, tau, n);
    r.printed_s_vs_product = relative_difference(printed, product);
    r.printed_s_vs_free_times_product = relative_difference(printed, free_matrix(r.basis, tau) * product);
  }
  for (std::size_t m = 1; m <= std::max<std::size_t>(n + 1, 2); ++m) {
    const auto [u1, u2] = chebyshev_u_pair(static_cast<long>(m), r.basis.chi_half);
    const cplx x = r.basis.chi_half;
    r.max_pell_residual = std::max(r.max_pell_residual, std::abs(u1 * u1 + u2 * u2 - 2.0 * x * u1 * u2 - 1.0));
  }

  if (r.basis.regime == DampingRegime::Weak) {
    const ModeFunction origin = ModeFunction::with_origin_kick(config);
    oracle::IntegratorSettings s0 = settings;
    s0.kick_at_origin = true;
    OscillatorConfig free_after = config;
    free_after.n_kicks = 0;
    const auto origin_traj = oracle::integrate_trajectory(free_after, r.basis, s0);
    double printed_dev = 0.0, oracle_dev = 0.0, scale = 1.0;
    for (const auto& s : origin_traj) {
      const double kc = origin.squeeze(s.t);
      scale = std::max(scale, kc);
      printed_dev = std::max(printed_dev, std::abs(k_single_kick(config, s.t) - kc));
      oracle_dev = std::max(oracle_dev, std::abs(s.k_coeff - kc));
    }
    r.single_kick_printed_vs_canonical = printed_dev;
    r.single_kick_canonical_vs_oracle = oracle_dev / scale;
  }
  return r;
}

inline void write_verify_text(std::ostream& os, const VerifyReport& r) {
  auto num = [](double v) { return csv_number(v); };
  os << "regime: " << to_string(r.basis.regime) << '\n';
  os << "omega_eff: " << num(r.basis.big_omega) << '\n';
  os << "chi_half: " << num(r.basis.chi_half.real()) << (r.basis.chi_half.imag() < 0 ? "-" : "+")
     << num(std::abs(r.basis.chi_half.imag())) << "i\n";
  os << "stability: " << to_string(r.stability) << '\n';
  os << "canonical_vs_oracle_max_abs: " << num(r.max_abs_canonical_vs_oracle) << '\n';
  os << "canonical_max_k: " << num(r.max_k_canonical) << '\n';
  os << "canonical_vs_oracle_scaled: " << num(r.canonical_vs_oracle) << '\n';
  os << "canonical_vs_oracle_tolerance: " << num(r.options.tolerance) << '\n';
  os << "canonical_vs_oracle_status: " << (r.passed ? "PASS" : "FAIL") << '\n';
  os << "printed_form: " << r.printed_form << '\n';
  os << "printed_vs_canonical_max_abs: " << num(r.max_printed_vs_canonical) << '\n';
  for (const auto& c : r.offset_scan)
    os << "printed_offset_scan: n=k" << (c.index_offset >= 0 ? "+" : "") << c.index_offset
       << " shift=" << num(c.shift) << " points=" << c.points << " max_abs=" << num(c.max_deviation) << '\n';
  for (const auto& p : r.probes)
    os << "probe: t=" << num(p.t) << " k_canonical=" << num(p.k_canonical) << " k_oracle=" << num(p.k_oracle)
       << " k_printed=" << num(p.k_printed) << " printed_minus_canonical=" << num(p.k_printed - p.k_canonical)
       << '\n';
  os << "step_det_residual_max: " << num(r.max_step_det_residual) << '\n';
  os << "product_det_residual: " << num(r.product_det_residual) << '\n';
  os << "closed_form_vs_direct_rel: " << num(r.closed_form_vs_direct) << '\n';
  os << "printed_s_vs_product_rel: " << num(r.printed_s_vs_product) << '\n';
  os << "printed_s_vs_free_times_product_rel: " << num(r.printed_s_vs_free_times_product) << '\n';
  os << "wronskian_residual_max: " << num(r.max_wronskian_residual) << '\n';
  os << "pell_residual_max: " << num(r.max_pell_residual) << '\n';
  if (!std::isnan(r.single_kick_printed_vs_canonical)) {
    os << "single_kick_printed_vs_canonical_max_abs: " << num(r.single_kick_printed_vs_canonical) << '\n';
    os << "single_kick_canonical_vs_oracle_scaled: " << num(r.single_kick_canonical_vs_oracle) << '\n';
  }
}

inline void write_verify_csv(std::ostream& os, const VerifyReport& r) {
  os << "t,k_canonical,k_oracle,abs_canonical_oracle,k_printed,abs_printed_canonical,wronskian_residual\n";
  for (const auto& row : r.rows)
    os << csv_number(row.t) << ',' << csv_number(row.k_canonical) << ',' << csv_number(row.k_oracle) << ','
       << csv_number(std::abs(row.k_canonical - row.k_oracle)) << ',' << csv_number(row.k_printed) << ','
       << csv_number(std::abs(row.k_printed - row.k_canonical)) << ',' << csv_number(row.wronskian_residual) << '\n';
}

struct ClosedFormRow {
  double t = 0.0;
  std::size_t n = 0;
  double k_canonical = 0.0;
  double k_printed = std::numeric_limits<double>::quiet_NaN();
  double k_single_kick_printed = std::numeric_limits<double>::quiet_NaN();
  double k_single_kick_canonical = std::numeric_limits<double>::quiet_NaN();
};

/// Printed forms on a time grid, next to the canonical values they describe.
inline std::vector<ClosedFormRow> closed_form_table(const OscillatorConfig& config, std::span<const double> grid) {
  const ModeFunction mode(config);
  std::optional<ModeFunction> origin;
  if (mode.basis().regime == DampingRegime::Weak) origin = ModeFunction::with_origin_kick(config);
  std::vector<ClosedFormRow> rows;
  rows.reserve(grid.size());
  for (double t : grid) {
    ClosedFormRow row;
    row.t = t;
    const std::size_t k = interval_index(config, t);
    row.n = k + 1;
    row.k_canonical = mode.squeeze(t);
    row.k_printed = printed_k(config, mode.basis().regime, t, k);
    if (origin) {
      row.k_single_kick_printed = k_single_kick(config, t);
      row.k_single_kick_canonical = origin->squeeze(t);
    }
    rows.push_back(row);
  }
  return rows;
}

inline void write_closed_form_csv(std::ostream& os, std::span<const ClosedFormRow> rows) {
  os << "t,n,k_canonical,k_printed,k_single_kick_printed,k_single_kick_canonical\n";
  for (const auto& r : rows)
    os << csv_number(r.t) << ',' << r.n << ',' << csv_number(r.k_canonical) << ',' << csv_number(r.k_printed) << ','
       << csv_number(r.k_single_kick_printed) << ',' << csv_number(r.k_single_kick_canonical) << '\n';
}

}  // namespace kickosc
