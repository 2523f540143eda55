#include "fbbm/profiles.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace fbbm {

GridSpec experiment_grid() { return GridSpec(64, kTwoPi); }

SpectralField default_profile(const GridSpec& grid, double s) {
  constexpr std::array<double, 3> amp{1.0, 0.6, 0.3};
  constexpr std::array<double, 3> phase{0.0, 0.7, 1.9};
  SpectralField u(grid);
  for (int i = 0; i < 3; ++i) u.set_mode(i + 1, 0.5 * amp[i] * std::polar(1.0, phase[i]));
  return (1.0 / sobolev_norm(u, s)) * u;
}

SpectralField two_mode_profile(const GridSpec& grid) {
  SpectralField u(grid);
  u.set_mode(1, 0.5);
  u.set_mode(2, std::polar(0.5, 0.7));  // a phase breaks x -> -x symmetry; even data has no cubic rate at t = 0
  return u;
}

SpectralField random_band_limited(const GridSpec& grid, int max_mode, Rng& rng) {
  if (max_mode < 1 || max_mode >= grid.max_index()) {
    throw std::invalid_argument("random_band_limited: max_mode out of range");
  }
  SpectralField u(grid);
  for (int j = 1; j <= max_mode; ++j) {
    const double re = rng.normal();
    const double im = rng.normal();
    u.set_mode(j, cd(re, im) / static_cast<double>(j));
  }
  return u;
}

SpectralField named_profile(const std::string& name, const GridSpec& grid, double s, std::uint64_t seed) {
  if (name == "default") return default_profile(grid, s);
  if (name == "two-mode") return two_mode_profile(grid);
  if (name == "random") {
    Rng rng(seed);
    const SpectralField u = random_band_limited(grid, grid.dealias_cutoff(), rng);
    return (1.0 / sobolev_norm(u, s)) * u;
  }
  throw std::invalid_argument("unknown profile '" + name + "'");
}

}  // namespace fbbm
