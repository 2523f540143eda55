#include "fbbm/grid.hpp"

#include <cmath>

namespace fbbm {

GridSpec::GridSpec(int n, double length, double fraction)
    : n_modes(n), domain_length(length), dealias_fraction(fraction) {
  validate();
}

void GridSpec::validate() const {
  if (n_modes < 8 || n_modes % 2 != 0) {
    throw std::invalid_argument("n_modes must be even and >= 8, got " + std::to_string(n_modes));
  }
  if (!(domain_length > 0.0) || !std::isfinite(domain_length)) {
    throw std::invalid_argument("domain_length must be positive");
  }
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0)) {
    throw std::invalid_argument("dealias_fraction must lie in (0,1]");
  }
}

int GridSpec::dealias_cutoff() const {
  // small slack so that e.g. 2/3 * 48 = 32 is not lost to rounding
  return static_cast<int>(std::floor(dealias_fraction * 0.5 * n_modes + 1e-9));
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha out of (0,1)");
}

FracParams::FracParams(double a, int N, int k) : alpha(a), sobolev_N(N), max_k(k) { validate(); }

void FracParams::validate() const {
  require_alpha(alpha);
  if (sobolev_N < 2) throw std::invalid_argument("sobolev_N must be >= 2");
  if (max_k < 1) throw std::invalid_argument("max_k must be >= 1");
}

}  // namespace fbbm
