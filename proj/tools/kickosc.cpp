// kickosc: command-line front end for the kicked damped oscillator.
//
//   kickosc simulate       --config c.txt --t-end 10 --samples 1001 --out traj.csv
//   kickosc verify         --kappa 0.5 --tau 1.5707963267948966 --n-kicks 1 --t-end 6.283185307179586
//   kickosc stability-map  --x omega0_tau:0.015707963267948967:6.283185307179586:400 --y kappa_over_omega0:0:1:200
//   kickosc sweep          --x gamma:0:0.5:6 --y kappa:0:0.5:6 --t-end 10 --samples 101
//   kickosc closed-forms   --gamma 0.1 --kappa 0.4 --t-end 5

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "kickosc/kickosc.hpp"

namespace {

using namespace kickosc;

constexpr int kExitValidation = 1;
constexpr int kExitVerification = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string config_path;
  std::vector<std::pair<std::string, std::optional<std::string>>> fields{
      {"omega0", {}}, {"gamma", {}}, {"kappa", {}}, {"tau", {}}, {"n_kicks", {}}, {"hbar", {}}, {"mass", {}}};
  std::string out;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "key=value configuration file");
    for (auto& [key, value] : fields) {
      std::string flag = "--" + key;
      for (char& ch : flag)
        if (ch == '_') ch = '-';
      app->add_option(flag, value, "override " + key);
    }
    app->add_option("--out", out, "output CSV path (default: stdout)");
  }

  OscillatorConfig resolve() const {
    std::string text;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw IoError("cannot read config file '" + config_path + "'");
      std::ostringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    std::vector<std::pair<std::string, std::string>> overrides;
    for (const auto& [key, value] : fields)
      if (value) overrides.emplace_back(key, *value);
    return parse_config(text, overrides);
  }
};

/// Output sink: the --out file or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw IoError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void close(const std::string& path) {
    if (file_) {
      file_->close();
      if (!*file_) throw IoError("failed writing '" + path + "'");
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

SweepAxis parse_axis(const std::string& text) {
  // name:min:max:count
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4) throw Error(ErrorCode::Parse, "axis '" + text + "' is not name:min:max:count");
  const auto param = parse_sweep_param(parts[0]);
  if (!param) throw Error(ErrorCode::UnknownKey, "axis parameter '" + parts[0] + "'");
  SweepAxis axis;
  axis.param = *param;
  axis.min = parse_double(parts[0], parts[1]);
  axis.max = parse_double(parts[0], parts[2]);
  const long long count = parse_integer(parts[0], parts[3]);
  if (count < 2) throw Error(ErrorCode::Validation, parts[0] + ": count >= 2");
  axis.count = static_cast<std::size_t>(count);
  return axis;
}

std::string axis_text(const SweepAxis& a) {
  return std::string(to_string(a.param)) + ":" + format_double(a.min) + ":" + format_double(a.max) + ":" +
         std::to_string(a.count);
}

void require_time_grid(double t_end, std::size_t samples) {
  if (!(t_end > 0.0)) throw Error(ErrorCode::Validation, "t_end > 0");
  if (samples < 2) throw Error(ErrorCode::Validation, "samples >= 2");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kicked damped quantum oscillator: mode function, squeezing and stability"};
  app.require_subcommand(1);

  CommonOptions common;
  double t_end = 10.0;
  std::size_t samples = 1001;
  int steps_per_interval = 10000;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string x_axis, y_axis;

  auto* simulate = app.add_subcommand("simulate", "analytic trajectory t, eps, K, sigma_x");
  auto* verify_cmd = app.add_subcommand("verify", "cross-check analytic path, integrator and printed forms");
  auto* stability = app.add_subcommand("stability-map", "stability class over (omega0 tau, kappa/omega0)");
  auto* sweep_cmd = app.add_subcommand("sweep", "K(t) over a two-parameter grid");
  auto* closed = app.add_subcommand("closed-forms", "printed closed-form K next to the canonical value");

  for (auto* sub : {simulate, verify_cmd, stability, sweep_cmd, closed}) common.attach(sub);
  for (auto* sub : {simulate, verify_cmd, sweep_cmd, closed}) {
    sub->add_option("--t-end", t_end, "end of the time grid");
    sub->add_option("--samples", samples, "number of time points");
  }
  verify_cmd->add_option("--steps-per-interval", steps_per_interval, "integrator steps per kick period");
  for (auto* sub : {stability, sweep_cmd}) {
    sub->add_option("--x", x_axis, "first axis name:min:max:count");
    sub->add_option("--y", y_axis, "second axis name:min:max:count");
    sub->add_option("--threads", threads, "worker threads");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitValidation;
  }

  try {
    const OscillatorConfig config = common.resolve();
    RunManifest manifest;
    manifest.config = config;
    manifest.outputs.push_back(common.out.empty() ? "stdout" : common.out);
    Sink sink(common.out);
    int status = 0;

    if (simulate->parsed()) {
      require_time_grid(t_end, samples);
      manifest.subcommand = "simulate";
      manifest.settings = {{"t_end", format_double(t_end)}, {"samples", std::to_string(samples)}};
      const ModeFunction mode(config);
      std::vector<TrajectorySample> rows;
      for (double t : uniform_grid(t_end, samples)) rows.push_back(mode.sample(t));
      write_manifest(sink.stream(), manifest);
      write_trajectory_csv(sink.stream(), rows);
    } else if (verify_cmd->parsed()) {
      require_time_grid(t_end, samples);
      VerifyOptions opts;
      opts.t_end = t_end;
      opts.samples = samples;
      opts.steps_per_interval = steps_per_interval;
      manifest.subcommand = "verify";
      manifest.settings = {{"t_end", format_double(t_end)},
                           {"samples", std::to_string(samples)},
                           {"steps_per_interval", std::to_string(steps_per_interval)}};
      manifest.tolerances = {{"canonical_vs_oracle", format_double(opts.tolerance)}};
      const VerifyReport report = verify(config, opts);
      std::ostringstream text;
      write_verify_text(text, report);
      if (common.out.empty()) {
        write_manifest(std::cout, manifest);
        std::cout << text.str();
      } else {
        std::cout << text.str();
        write_manifest(sink.stream(), manifest);
        std::istringstream lines(text.str());
        for (std::string line; std::getline(lines, line);) sink.stream() << "# " << line << '\n';
        write_verify_csv(sink.stream(), report);
      }
      status = report.passed ? 0 : kExitVerification;
    } else if (stability->parsed()) {
      SweepRequest request;
      request.base = config;
      request.threads = threads;
      request.x = x_axis.empty() ? SweepAxis{SweepParam::Omega0Tau, 2.0 * std::numbers::pi / 400.0,
                                             2.0 * std::numbers::pi, 400}
                                 : parse_axis(x_axis);
      request.y = y_axis.empty() ? SweepAxis{SweepParam::KappaOverOmega0, 0.0, 1.0, 200} : parse_axis(y_axis);
      manifest.subcommand = "stability-map";
      manifest.settings = {{"x", axis_text(request.x)}, {"y", axis_text(request.y)}};
      manifest.tolerances = {{"parabolic_band", format_double(kStabilityTolerance)}};
      const auto cells = stability_map(request);
      write_manifest(sink.stream(), manifest);
      write_stability_csv(sink.stream(), cells);
    } else if (sweep_cmd->parsed()) {
      require_time_grid(t_end, samples);
      SweepRequest request;
      request.base = config;
      request.threads = threads;
      request.x = x_axis.empty() ? SweepAxis{SweepParam::Gamma, 0.0, 0.5, 6} : parse_axis(x_axis);
      request.y = y_axis.empty() ? SweepAxis{SweepParam::Kappa, 0.0, 0.5, 6} : parse_axis(y_axis);
      manifest.subcommand = "sweep";
      manifest.settings = {{"x", axis_text(request.x)},
                           {"y", axis_text(request.y)},
                           {"t_end", format_double(t_end)},
                           {"samples", std::to_string(samples)}};
      const auto grid = uniform_grid(t_end, samples);
      const auto rows = squeezing_sweep(request, grid);
      write_manifest(sink.stream(), manifest);
      write_sweep_csv(sink.stream(), request, rows);
    } else if (closed->parsed()) {
      require_time_grid(t_end, samples);
      manifest.subcommand = "closed-forms";
      manifest.settings = {{"t_end", format_double(t_end)}, {"samples", std::to_string(samples)}};
      const auto grid = uniform_grid(t_end, samples);
      const auto rows = closed_form_table(config, grid);
      write_manifest(sink.stream(), manifest);
      write_closed_form_csv(sink.stream(), rows);
    }
    sink.close(common.out);
    return status;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::Io ? kExitIo : kExitValidation;
  }
}
