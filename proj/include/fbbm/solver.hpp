// RK4 integration of  u_t + u_x + u u_x + |D|^al u_t = 0  in spectral form:
//
//   u_t = -(1+|D|^al)^{-1} d/dx (u + u^2/2)
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "fbbm/energy.hpp"
#include "fbbm/spectral_field.hpp"

namespace fbbm {

/// Right-hand side.  The product u^2 is exact on the grid (zero-padded) and
/// then truncated by the 2/3 rule when dealias_product is set.
SpectralField evolution_rhs(const SpectralField& u, double alpha, bool dealias_product = true);

SpectralField rk4_step(const SpectralField& u, double dt, double alpha, bool dealias_product = true);

/// Largest |linear frequency| xi / (1+|xi|^al) on the grid.
double max_linear_frequency(const GridSpec& grid, double alpha);
/// RK4 step size limit used by SolverConfig::validate: 2.5 / max_linear_frequency.
double stability_limit(const GridSpec& grid, double alpha);

struct SolverConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  int record_stride = 1;
  bool dealias = true;
  double drift_abort_threshold = 1e-6;

  /// Throws std::invalid_argument on nonpositive dt/t_end/stride or dt above
  /// the stability limit.
  void validate(const GridSpec& grid, double alpha) const;
};

struct TrajectoryRecord {
  /// s values for sobolev_norms: 0, 2 + al/2, N + al/2.
  std::array<double, 3> sobolev_indices{};
  std::vector<double> times;
  std::vector<std::array<double, 3>> sobolev_norms;
  /// Empty unless an operator was passed to integrate().
  std::vector<EnergyBreakdown> energy_breakdowns;
  std::vector<double> conserved_values;
  SpectralField final_state;
};

/// Non-finite state.  last_valid_time is the last time with a finite state.
class ResolutionLoss : public Error {
 public:
  ResolutionLoss(double last_valid_time);
  double last_valid_time;
};

/// Conserved-functional drift above SolverConfig::drift_abort_threshold.
class DriftAbort : public Error {
 public:
  DriftAbort(double time, double drift);
  double time;
  double drift;
};

/// Steps from t = 0 to cfg.t_end with ceil(t_end/dt) equal steps, recording
/// at t = 0, every record_stride steps, and at t_end.
TrajectoryRecord integrate(const SpectralField& u0, const SolverConfig& cfg, const FracParams& params,
                           const BilinearOperator* energy_op = nullptr);
/// Same, filling rec as it goes; on an exception rec keeps everything
/// recorded so far (final_state is the last finite state).  Without an
/// energy_op one is built for the grid of u0.
void integrate_into(TrajectoryRecord& rec, const SpectralField& u0, const SolverConfig& cfg,
                    const FracParams& params, const BilinearOperator* energy_op = nullptr);

enum class ProbeStatus { crossed, capped, resolution_loss };
const char* probe_status_name(ProbeStatus s);

struct LifespanOptions {
  double growth_factor = 2.0;
  /// The probe stops at cap_multiplier / eps^2.
  double cap_multiplier = 4.0;
  double dt = 0.025;
  double drift_abort_threshold = 1e-6;
};

struct ProbeResult {
  double eps = 0.0;
  double time = 0.0;
  ProbeStatus status = ProbeStatus::capped;
  double cap = 0.0;
  double initial_norm = 0.0;
  double max_norm_ratio = 1.0;  ///< max_t ||u(t)|| / ||u(0)|| in H^{N+al/2}
};

/// Integrates eps * profile until ||u||_{H^{N+al/2}} reaches growth_factor
/// times its initial value or the cap is hit.  growth_factor must be >= 1.
ProbeResult lifespan_probe(const SpectralField& profile, double eps, const FracParams& params,
                           const LifespanOptions& opt = {});

}  // namespace fbbm
