#include "fbbm/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace fbbm {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  auto [p, ec] = std::from_chars(first, last, x);
  if (ec != std::errc{} || p != last) throw std::invalid_argument("bad number for '" + key + "': '" + v + "'");
  return x;
}

long long to_int(const std::string& key, const std::string& v) {
  long long x = 0;
  const char* last = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), last, x);
  if (ec != std::errc{} || p != last) throw std::invalid_argument("bad integer for '" + key + "': '" + v + "'");
  return x;
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(to_double(key, item));
  }
  return out;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"simulate",          "sweep-lifespan",     "sweep-energy-rate",
                                              "verify-symbol",     "verify-cancellation", "verify-identities",
                                              "energy-report"};
  return names;
}

void ExperimentConfig::validate() const {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), experiment) == names.end()) {
    throw std::invalid_argument("unknown experiment '" + experiment + "'");
  }
  require_alpha(alpha);
  grid().validate();
  params().validate();
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  for (double e : eps) {
    if (!(e > 0.0)) throw std::invalid_argument("eps values must be positive");
  }
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
  if (record_stride < 1) throw std::invalid_argument("record_stride must be >= 1");
  if (!(growth_factor >= 1.0)) throw std::invalid_argument("growth_factor must be >= 1");
  if (!(cap_multiplier > 0.0)) throw std::invalid_argument("cap_multiplier must be positive");
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (!(window > 0.0)) throw std::invalid_argument("window must be positive");
  if (snapshots < 2) throw std::invalid_argument("snapshots must be >= 2");
  if (draws < 1) throw std::invalid_argument("draws must be >= 1");
}

std::map<std::string, std::string> ExperimentConfig::entries() const {
  std::string eps_s;
  for (std::size_t i = 0; i < eps.size(); ++i) eps_s += (i ? "," : "") + fmt(eps[i]);
  return {{"experiment", experiment},
          {"alpha", fmt(alpha)},
          {"n_modes", std::to_string(n_modes)},
          {"domain_length", fmt(domain_length)},
          {"N", std::to_string(sobolev_N)},
          {"k", std::to_string(k)},
          {"eps", eps_s},
          {"seed", std::to_string(seed)},
          {"out_dir", out_dir},
          {"profile", profile},
          {"dt", fmt(dt)},
          {"t_end", fmt(t_end)},
          {"record_stride", std::to_string(record_stride)},
          {"drift_abort_threshold", fmt(drift_abort_threshold)},
          {"growth_factor", fmt(growth_factor)},
          {"cap_multiplier", fmt(cap_multiplier)},
          {"samples", std::to_string(samples)},
          {"window", fmt(window)},
          {"snapshots", std::to_string(snapshots)},
          {"draws", std::to_string(draws)}};
}

ConfigError::ConfigError(const std::string& where, int l, const std::string& msg)
    : Error(where + ":" + std::to_string(l) + ": " + msg), line(l) {}

void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& v) {
  using Setter = std::function<void(const std::string&)>;
  const std::map<std::string, Setter> setters{
      {"experiment", [&](const std::string& s) { c.experiment = s; }},
      {"alpha", [&](const std::string& s) { c.alpha = to_double(key, s); }},
      {"n_modes", [&](const std::string& s) { c.n_modes = static_cast<int>(to_int(key, s)); }},
      {"domain_length", [&](const std::string& s) { c.domain_length = to_double(key, s); }},
      {"N", [&](const std::string& s) { c.sobolev_N = static_cast<int>(to_int(key, s)); }},
      {"k", [&](const std::string& s) { c.k = static_cast<int>(to_int(key, s)); }},
      {"eps", [&](const std::string& s) { c.eps = to_list(key, s); }},
      {"seed", [&](const std::string& s) { c.seed = static_cast<std::uint64_t>(to_int(key, s)); }},
      {"out_dir", [&](const std::string& s) { c.out_dir = s; }},
      {"profile", [&](const std::string& s) { c.profile = s; }},
      {"dt", [&](const std::string& s) { c.dt = to_double(key, s); }},
      {"t_end", [&](const std::string& s) { c.t_end = to_double(key, s); }},
      {"record_stride", [&](const std::string& s) { c.record_stride = static_cast<int>(to_int(key, s)); }},
      {"drift_abort_threshold", [&](const std::string& s) { c.drift_abort_threshold = to_double(key, s); }},
      {"growth_factor", [&](const std::string& s) { c.growth_factor = to_double(key, s); }},
      {"cap_multiplier", [&](const std::string& s) { c.cap_multiplier = to_double(key, s); }},
      {"samples", [&](const std::string& s) { c.samples = static_cast<int>(to_int(key, s)); }},
      {"window", [&](const std::string& s) { c.window = to_double(key, s); }},
      {"snapshots", [&](const std::string& s) { c.snapshots = static_cast<int>(to_int(key, s)); }},
      {"draws", [&](const std::string& s) { c.draws = static_cast<int>(to_int(key, s)); }},
  };
  const auto it = setters.find(key);
  if (it == setters.end()) throw std::invalid_argument("unknown key '" + key + "'");
  it->second(v);
}

ExperimentConfig parse_config(const std::string& text, const std::string& name, const ExperimentConfig& base) {
  ExperimentConfig cfg = base;
  std::stringstream ss(text);
  std::string raw;
  int line = 0;
  while (std::getline(ss, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(name, line, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError(name, line, "missing key");
    if (value.empty()) throw ConfigError(name, line, "missing value for '" + key + "'");
    try {
      apply_setting(cfg, key, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(name, line, e.what());
    }
    // range-check right away so the error points at the offending line
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(name, line, e.what());
    }
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(name, 0, e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path, const ExperimentConfig& base) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot read file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path, base);
}

}  // namespace fbbm
