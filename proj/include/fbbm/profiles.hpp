// Initial-data profiles for experiments.
#pragma once

#include <cstdint>
#include <string>

#include "fbbm/rng.hpp"
#include "fbbm/spectral_field.hpp"

namespace fbbm {

/// Grid used by the experiments unless configured otherwise: 64 points on [0, 2 pi).
GridSpec experiment_grid();

/// Modes j = 1, 2, 3 with amplitudes 1, 0.6, 0.3 and phases 0, 0.7, 1.9,
/// u = sum_j a_j cos(xi_j x + phi_j), scaled to unit H^s norm.
SpectralField default_profile(const GridSpec& grid, double s);

/// cos(xi_1 x) + cos(xi_2 x), unnormalized.
SpectralField two_mode_profile(const GridSpec& grid);

/// Mean-zero field with complex normal coefficients of size 1/j on
/// 1 <= j <= max_mode, zero elsewhere.
SpectralField random_band_limited(const GridSpec& grid, int max_mode, Rng& rng);

/// "default" (unit H^s), "two-mode", or "random" (band-limited to the
/// dealias cutoff, unit H^s, drawn from seed).
SpectralField named_profile(const std::string& name, const GridSpec& grid, double s, std::uint64_t seed);

}  // namespace fbbm
