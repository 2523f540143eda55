// Plain-text experiment configuration.
//
//   # comment
//   experiment = sweep-energy-rate
//   alpha = 0.5
//   eps = 0.05, 0.1, 0.2, 0.4
//
// One key = value per line.  Unknown keys, malformed values and out-of-range
// parameters are reported as "<path>:<line>: <message>".
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fbbm/grid.hpp"

namespace fbbm {

struct ExperimentConfig {
  std::string experiment = "simulate";
  double alpha = 0.5;
  int n_modes = 64;
  double domain_length = kTwoPi;
  int sobolev_N = 2;
  int k = 2;
  std::vector<double> eps{0.05, 0.1, 0.2, 0.4};
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  std::string profile = "default";
  double dt = 0.01;
  double t_end = 1.0;
  int record_stride = 10;
  double drift_abort_threshold = 1e-6;
  double growth_factor = 2.0;
  double cap_multiplier = 4.0;
  int samples = 10000;
  double window = 1.0;
  int snapshots = 21;
  int draws = 1;

  GridSpec grid() const { return GridSpec(n_modes, domain_length); }
  FracParams params() const { return FracParams(alpha, sobolev_N, std::max(sobolev_N, k)); }
  /// Throws std::invalid_argument on any out-of-range field.
  void validate() const;
  /// All fields as strings, sorted by key (for manifests).
  std::map<std::string, std::string> entries() const;
};

/// Experiments understood by run_experiment.
const std::vector<std::string>& experiment_names();

class ConfigError : public Error {
 public:
  ConfigError(const std::string& where, int line, const std::string& msg);
  int line;
};

/// Sets one key from its text value.  Throws std::invalid_argument on an
/// unknown key or a malformed value.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Parses key = value text on top of base.  name labels errors.
ExperimentConfig parse_config(const std::string& text, const std::string& name,
                              const ExperimentConfig& base = {});
ExperimentConfig load_config(const std::string& path, const ExperimentConfig& base = {});

}  // namespace fbbm
