#pragma once

// Flat key=value configuration: one or more pairs per line (separated by
// ',' or ';'), '#' starts a comment. Recognised keys are the fields of
// OscillatorConfig.

#include <charconv>
#include <cstdio>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "kickosc/core.hpp"

namespace kickosc {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::string location(int line) { return line > 0 ? " (line " + std::to_string(line) + ")" : std::string(); }

}  // namespace detail

/// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view key, std::string_view text, int line = 0) {
  text = detail::trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw Error(ErrorCode::Parse, std::string(key) + ": cannot parse '" + std::string(text) + "' as a number" +
                                      detail::location(line));
  return v;
}

inline long long parse_integer(std::string_view key, std::string_view text, int line = 0) {
  text = detail::trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  long long v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw Error(ErrorCode::Parse, std::string(key) + ": cannot parse '" + std::string(text) + "' as an integer" +
                                      detail::location(line));
  return v;
}

/// Sets one field; UnknownKey / ParseError carry the line number when known.
inline void set_config_value(OscillatorConfig& c, std::string_view key, std::string_view value, int line = 0) {
  if (key == "omega0") c.omega0 = parse_double(key, value, line);
  else if (key == "gamma") c.gamma = parse_double(key, value, line);
  else if (key == "kappa") c.kappa = parse_double(key, value, line);
  else if (key == "tau") c.tau = parse_double(key, value, line);
  else if (key == "hbar") c.hbar = parse_double(key, value, line);
  else if (key == "mass") c.mass = parse_double(key, value, line);
  else if (key == "n_kicks") {
    const long long n = parse_integer(key, value, line);
    if (n < 0 || n > kMaxKicks)
      throw Error(ErrorCode::Validation, "n_kicks must be in [0, 100000]" + detail::location(line));
    c.n_kicks = static_cast<int>(n);
  } else {
    throw Error(ErrorCode::UnknownKey, "'" + std::string(key) + "'" + detail::location(line));
  }
}

/// Reads key=value text on top of `base` without validating.
inline OscillatorConfig read_config_text(std::string_view text, OscillatorConfig base = {}) {
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty()) {
      const auto sep = line.find_first_of(",;");
      const std::string_view item = detail::trim(line.substr(0, sep));
      line = sep == std::string_view::npos ? std::string_view{} : line.substr(sep + 1);
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string_view::npos)
        throw Error(ErrorCode::Parse, "expected key=value, got '" + std::string(item) + "'" + detail::location(line_no));
      set_config_value(base, detail::trim(item.substr(0, eq)), item.substr(eq + 1), line_no);
    }
  }
  return base;
}

/// File text first, then flag overrides (key, value) in order; validated.
inline OscillatorConfig parse_config(std::string_view file_text,
                                     const std::vector<std::pair<std::string, std::string>>& overrides = {}) {
  OscillatorConfig c = read_config_text(file_text);
  for (const auto& [key, value] : overrides) set_config_value(c, key, value);
  validate(c);
  return c;
}

inline std::string emit_config(const OscillatorConfig& c, std::string_view separator = "\n") {
  std::string out;
  auto put = [&](std::string_view key, const std::string& v) {
    if (!out.empty()) out += separator;
    out += key;
    out += '=';
    out += v;
  };
  put("omega0", format_double(c.omega0));
  put("gamma", format_double(c.gamma));
  put("kappa", format_double(c.kappa));
  put("tau", format_double(c.tau));
  put("n_kicks", std::to_string(c.n_kicks));
  put("hbar", format_double(c.hbar));
  put("mass", format_double(c.mass));
  return out;
}

}  // namespace kickosc
