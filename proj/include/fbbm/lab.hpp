// Parameter sweeps, exponent fits and experiment drivers.
#pragma once

#include <string>
#include <vector>

#include "fbbm/config.hpp"
#include "fbbm/fit.hpp"
#include "fbbm/solver.hpp"

namespace fbbm {

enum class PointStatus { ok, capped, resolution_loss };
const char* point_status_name(PointStatus s);

struct SweepResult {
  std::vector<double> eps_list;
  std::vector<double> measured;
  std::vector<PointStatus> flags;
  /// NaN when fewer than two points are usable.
  double fit_exponent = 0.0;
  double fit_stderr = 0.0;
  int fit_points = 0;
  std::string note;
};

struct EnergyRateOptions {
  double window = 1.0;  ///< rates are maximized over [0, window]
  int snapshots = 21;   ///< >= 10, equally spaced including both ends
  double dt = 0.01;
};

struct EnergyRateSweep {
  /// max |dE^(N)/dt| from the quartic forms; expected slope 4.
  SweepResult modified;
  /// max |d/dt ||u||^2_{H^{N+al/2}}| from snapshot differences; expected slope 3.
  SweepResult standard;
};

/// Needs >= 4 distinct eps values.  Points are run concurrently.
EnergyRateSweep energy_rate_sweep(const SpectralField& profile, const std::vector<double>& eps_list,
                                  const FracParams& params, const EnergyRateOptions& opt = {});

struct LifespanSweep {
  SweepResult result;  ///< measured = T(eps); fit over crossed probes only
  std::vector<ProbeResult> probes;
  bool all_capped = false;
  /// T(eps) eps^2 non-decreasing as eps decreases.
  bool scaled_time_monotone = false;
  /// T(eps) >= T(2 eps)/4 for every crossed probe with a doubled partner.
  bool doubling_consistent = false;
};

LifespanSweep lifespan_sweep(const SpectralField& profile, const std::vector<double>& eps_list,
                             const FracParams& params, const LifespanOptions& opt = {});

/// Runs cfg.experiment, writes its artifacts and manifest.json into
/// cfg.out_dir, and returns the process exit status.  Artifacts written
/// before a failure are kept and listed in the manifest.
int run_experiment(const ExperimentConfig& cfg);

/// load_config + run_experiment.
int run_config(const std::string& path);

}  // namespace fbbm
