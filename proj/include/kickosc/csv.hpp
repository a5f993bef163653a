#pragma once

// CSV tables emitted by the command-line tool. Numbers use the shortest
// round-trip representation; every file opens with '#' manifest lines.

#include <cmath>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kickosc/config_io.hpp"
#include "kickosc/sweep.hpp"
#include "kickosc/trajectory.hpp"

namespace kickosc {

inline constexpr std::string_view kToolVersion = "1.0.0";

struct RunManifest {
  OscillatorConfig config;
  std::string subcommand;
  std::vector<std::string> outputs;
  std::vector<std::pair<std::string, std::string>> settings;    // t_end, samples, ...
  std::vector<std::pair<std::string, std::string>> tolerances;  // name -> value
};

inline void write_manifest(std::ostream& os, const RunManifest& m) {
  os << "# tool: kickosc " << kToolVersion << '\n';
  os << "# subcommand: " << m.subcommand << '\n';
  os << "# config: " << emit_config(m.config, " ") << '\n';
  for (const auto& [k, v] : m.settings) os << "# " << k << ": " << v << '\n';
  for (const auto& [k, v] : m.tolerances) os << "# tolerance " << k << ": " << v << '\n';
  for (const auto& path : m.outputs) os << "# output: " << path << '\n';
}

inline std::string csv_number(double v) { return std::isnan(v) ? std::string("nan") : format_double(v); }

/// Uniform grid of `count` points on [0, t_end], both ends included.
inline std::vector<double> uniform_grid(double t_end, std::size_t count) {
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i)
    grid[i] = i + 1 == count ? t_end : t_end * static_cast<double>(i) / static_cast<double>(count - 1);
  return grid;
}

inline void write_trajectory_csv(std::ostream& os, std::span<const TrajectorySample> samples) {
  os << "t,re_eps,im_eps,k_coeff,sigma_x\n";
  for (const auto& s : samples)
    os << csv_number(s.t) << ',' << csv_number(s.epsilon.real()) << ',' << csv_number(s.epsilon.imag()) << ','
       << csv_number(s.k_coeff) << ',' << csv_number(s.sigma_x) << '\n';
}

inline void write_stability_csv(std::ostream& os, std::span<const StabilityCell> cells) {
  os << "omega0_tau,kappa_over_omega0,re_chi_half,im_chi_half,class\n";
  for (const auto& c : cells)
    os << csv_number(c.omega0_tau) << ',' << csv_number(c.kappa_over_omega0) << ','
       << csv_number(c.chi_half_value.real()) << ',' << csv_number(c.chi_half_value.imag()) << ','
       << (c.ok() ? to_string(c.stability_class) : std::string_view("Error")) << '\n';
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (!cells[i].ok()) os << "# error row " << i << ": " << cells[i].error << '\n';
}

inline void write_sweep_csv(std::ostream& os, const SweepRequest& request, std::span<const SweepRow> rows) {
  os << to_string(request.x.param) << ',' << to_string(request.y.param) << ",t,k_coeff,error\n";
  for (const auto& r : rows) {
    os << csv_number(r.x) << ',' << csv_number(r.y) << ',' << csv_number(r.t) << ',' << csv_number(r.k_coeff) << ',';
    // commas and newlines inside messages become ';'
    for (char ch : r.error) os << (ch == ',' || ch == '\n' ? ';' : ch);
    os << '\n';
  }
}

}  // namespace kickosc
