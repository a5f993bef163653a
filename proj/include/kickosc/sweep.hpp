#pragma once

// Parameter-grid engines. Cells are evaluated concurrently but always
// returned in row-major order (first axis outer), so the output does not
// depend on the number of worker threads.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "kickosc/core.hpp"
#include "kickosc/observables.hpp"

namespace kickosc {

inline constexpr double kStabilityTolerance = 1e-9;

enum class StabilityClass { Elliptic, Parabolic, Hyperbolic };

constexpr std::string_view to_string(StabilityClass c) {
  switch (c) {
    case StabilityClass::Elliptic: return "Elliptic";
    case StabilityClass::Parabolic: return "Parabolic";
    case StabilityClass::Hyperbolic: return "Hyperbolic";
  }
  return "Unknown";
}

/// Bounded U_n(x) needs x in [-1, 1]; outside that band repeated kicks grow
/// the coefficients exponentially (parametric resonance).
inline StabilityClass classify_stability(cplx chi_half) {
  if (!std::isfinite(chi_half.real()) || !std::isfinite(chi_half.imag()))
    throw Error(ErrorCode::NonFinite, "chi_half is not finite");
  const double tol = kStabilityTolerance;
  if (std::abs(chi_half.real()) < 1.0 - tol && std::abs(chi_half.imag()) <= tol) return StabilityClass::Elliptic;
  if (std::abs(chi_half) > 1.0 + tol) return StabilityClass::Hyperbolic;
  return StabilityClass::Parabolic;
}

enum class SweepParam { Omega0, Gamma, Kappa, Tau, Hbar, Mass, Omega0Tau, KappaOverOmega0 };

constexpr std::string_view to_string(SweepParam p) {
  switch (p) {
    case SweepParam::Omega0: return "omega0";
    case SweepParam::Gamma: return "gamma";
    case SweepParam::Kappa: return "kappa";
    case SweepParam::Tau: return "tau";
    case SweepParam::Hbar: return "hbar";
    case SweepParam::Mass: return "mass";
    case SweepParam::Omega0Tau: return "omega0_tau";
    case SweepParam::KappaOverOmega0: return "kappa_over_omega0";
  }
  return "unknown";
}

inline std::optional<SweepParam> parse_sweep_param(std::string_view name) {
  for (auto p : {SweepParam::Omega0, SweepParam::Gamma, SweepParam::Kappa, SweepParam::Tau, SweepParam::Hbar,
                 SweepParam::Mass, SweepParam::Omega0Tau, SweepParam::KappaOverOmega0})
    if (to_string(p) == name) return p;
  return std::nullopt;
}

struct SweepAxis {
  SweepParam param = SweepParam::Kappa;
  double min = 0.0;
  double max = 1.0;
  std::size_t count = 2;

  /// Inclusive linspace.
  double value(std::size_t i) const {
    if (i + 1 == count) return max;
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
};

struct SweepRequest {
  SweepAxis x;
  SweepAxis y;
  OscillatorConfig base;
  unsigned threads = 1;
};

inline void validate(const SweepRequest& r) {
  for (const SweepAxis* a : {&r.x, &r.y}) {
    if (a->count < 2) throw Error(ErrorCode::Validation, std::string(to_string(a->param)) + ": count >= 2");
    if (!std::isfinite(a->min) || !std::isfinite(a->max))
      throw Error(ErrorCode::Validation, std::string(to_string(a->param)) + ": range must be finite");
  }
}

/// Applies one swept value. omega0_tau and kappa_over_omega0 are resolved
/// against the omega0 already in `c`.
inline void apply(OscillatorConfig& c, SweepParam p, double v) {
  switch (p) {
    case SweepParam::Omega0: c.omega0 = v; break;
    case SweepParam::Gamma: c.gamma = v; break;
    case SweepParam::Kappa: c.kappa = v; break;
    case SweepParam::Tau: c.tau = v; break;
    case SweepParam::Hbar: c.hbar = v; break;
    case SweepParam::Mass: c.mass = v; break;
    case SweepParam::Omega0Tau: c.tau = v / c.omega0; break;
    case SweepParam::KappaOverOmega0: c.kappa = v * c.omega0; break;
  }
}

inline OscillatorConfig resolve(const SweepRequest& r, std::size_t ix, std::size_t iy) {
  OscillatorConfig c = r.base;
  apply(c, r.x.param, r.x.value(ix));
  apply(c, r.y.param, r.y.value(iy));
  return c;
}

namespace detail {

/// Runs fn(i) for i in [0, n) on `threads` workers, strided.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
}

}  // namespace detail

struct StabilityCell {
  double omega0_tau = 0.0;
  double kappa_over_omega0 = 0.0;
  cplx chi_half_value{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  StabilityClass stability_class = StabilityClass::Parabolic;
  std::string error;  // empty unless the cell's configuration was rejected

  bool ok() const { return error.empty(); }
};

inline std::vector<StabilityCell> stability_map(const SweepRequest& request) {
  validate(request);
  const std::size_t nx = request.x.count, ny = request.y.count;
  std::vector<StabilityCell> cells(nx * ny);
  detail::parallel_for(cells.size(), request.threads, [&](std::size_t i) {
    const OscillatorConfig c = resolve(request, i / ny, i % ny);
    StabilityCell& cell = cells[i];
    cell.omega0_tau = c.omega0 * c.tau;
    cell.kappa_over_omega0 = c.kappa / c.omega0;
    try {
      const ModeBasis basis = mode_basis(c);
      cell.chi_half_value = basis.chi_half;
      cell.stability_class = classify_stability(basis.chi_half);
    } catch (const Error& e) {
      cell.error = e.what();
    }
  });
  return cells;
}

struct SweepRow {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
  double k_coeff = std::numeric_limits<double>::quiet_NaN();
  std::string error;
};

/// Canonical K(t) for every grid point, params-major then time.
inline std::vector<SweepRow> squeezing_sweep(const SweepRequest& request, std::span<const double> time_grid) {
  validate(request);
  if (time_grid.empty()) throw Error(ErrorCode::EmptyInput, "time grid is empty");
  const std::size_t nx = request.x.count, ny = request.y.count, nt = time_grid.size();
  std::vector<SweepRow> rows(nx * ny * nt);
  detail::parallel_for(nx * ny, request.threads, [&](std::size_t cell) {
    const std::size_t ix = cell / ny, iy = cell % ny;
    SweepRow* out = rows.data() + cell * nt;
    for (std::size_t j = 0; j < nt; ++j) {
      out[j].x = request.x.value(ix);
      out[j].y = request.y.value(iy);
      out[j].t = time_grid[j];
    }
    try {
      const ModeFunction mode(resolve(request, ix, iy));
      for (std::size_t j = 0; j < nt; ++j) out[j].k_coeff = mode.squeeze(time_grid[j]);
    } catch (const Error& e) {
      for (std::size_t j = 0; j < nt; ++j) {
        out[j].k_coeff = std::numeric_limits<double>::quiet_NaN();
        out[j].error = e.what();
      }
    }
  });
  return rows;
}

}  // namespace kickosc
