// Partial energies E_k, the modified energy E^(N), and the conserved functional.
//
//   E_k   = || d^k (1+|D|^al)^{1/2} u ||^2
//           + 2 < d^k (1+|D|^al)^{1/2} u, d^k (1+|D|^al)^{1/2} P(u,u) >
//   E^(N) = sum_{k=1..N} E_k + || (1+|D|^al)^{1/2} u ||^2
#pragma once

#include <span>
#include <vector>

#include "fbbm/fit.hpp"
#include "fbbm/normal_form.hpp"

namespace fbbm {

struct PartialEnergy {
  double quadratic = 0.0;
  double cross = 0.0;
  double value() const { return quadratic + cross; }
};

struct EnergyBreakdown {
  std::vector<int> k_values;
  std::vector<double> quadratic_part;
  std::vector<double> cross_part;
  /// || d^k (1+|D|^al)^{1/2} P(u,u) ||^2, reported only; never part of total.
  std::vector<double> discarded_part;
  double zero_level = 0.0;
  double total = 0.0;
};

/// E_k split into its quadratic and cubic pieces.  1 <= k, u mean-zero.
PartialEnergy partial_energy(const BilinearOperator& P, const SpectralField& u, int k);

/// E^(N), N >= 2.
EnergyBreakdown modified_energy(const BilinearOperator& P, const SpectralField& u, int N);

/// || (1+|D|^al)^{1/2} u ||^2, conserved by the flow.
double conserved_functional(const SpectralField& u, double alpha);

/// One run of an eps-sweep: snapshots of ||u(t)||^2_{H^s}.
struct RateRun {
  double eps = 0.0;
  std::vector<double> times;
  std::vector<double> norm_sq;
};

struct RateFit {
  std::vector<double> eps;
  std::vector<double> rates;  ///< max |d/dt ||u||^2| per run (finite differences)
  PowerFit fit;
};

/// Max |d/dt ||u||^2_{H^s}| per run by centred differences, then the power
/// law of rate against eps.  Needs >= 3 runs of >= 10 snapshots each.
RateFit standard_energy_rate(std::span<const RateRun> runs);

/// Largest |difference quotient| of a sampled series.
double max_abs_rate(std::span<const double> times, std::span<const double> values);

}  // namespace fbbm
