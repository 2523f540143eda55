// Least-squares power-law fits.
#pragma once

#include <span>

namespace fbbm {

struct PowerFit {
  double exponent = 0.0;
  double stderr_exponent = 0.0;
  double log_prefactor = 0.0;
  int points = 0;
};

/// Fits y = C x^p by ordinary least squares on (log x, log y).
/// Throws std::invalid_argument with fewer than 2 points or nonpositive data.
PowerFit fit_power_law(std::span<const double> x, std::span<const double> y);

}  // namespace fbbm
