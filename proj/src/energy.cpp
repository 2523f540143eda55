#include "fbbm/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fbbm/lattice.hpp"

namespace fbbm {

namespace {

void require_mean_zero(const SpectralField& u) {
  if (!u.is_mean_zero()) throw std::invalid_argument("energy: u must be mean-zero");
}

// 2 <d^k (1+|D|^al)^{1/2} u, d^k (1+|D|^al)^{1/2} q> written as
// 2 <d^k (1+|D|^al) u, d^k q>; only the modes of u enter, so q need only be
// exact on u's support.
double cross_term(const SpectralField& u, const SpectralField& q, double alpha, int k) {
  const SpectralField a = spatial_derivative(one_plus_fractional(u, alpha), k);
  const SpectralField b = spatial_derivative(q, k);
  return 2.0 * inner_product(a, b).real();
}

}  // namespace

PartialEnergy partial_energy(const BilinearOperator& P, const SpectralField& u, int k) {
  if (k < 1) throw std::invalid_argument("partial_energy: k must be >= 1");
  require_mean_zero(u);
  const double alpha = P.alpha();
  PartialEnergy e;
  const double w = weighted_energy_norm(u, alpha, k);
  e.quadratic = w * w;
  e.cross = cross_term(u, P.apply_undealiased(u, u), alpha, k);
  return e;
}

EnergyBreakdown modified_energy(const BilinearOperator& P, const SpectralField& u, int N) {
  if (N < 2) throw std::invalid_argument("modified_energy: N must be >= 2");
  require_mean_zero(u);
  const double alpha = P.alpha();
  const SpectralField q = P.apply_undealiased(u, u);
  // P(u,u) on the full lattice for the discarded diagnostic
  LatticeSeries ul = LatticeSeries::from_field(u);
  const LatticeSeries pl = bilinear(ul, ul, P.symbol());
  EnergyBreakdown b;
  b.zero_level = conserved_functional(u, alpha);
  b.total = b.zero_level;
  for (int k = 1; k <= N; ++k) {
    const double w = weighted_energy_norm(u, alpha, k);
    const double quad = w * w;
    const double cross = cross_term(u, q, alpha, k);
    const LatticeSeries dp = derivative(pl, k);
    const double disc = inner(one_plus_fractional(dp, alpha), dp).real();
    b.k_values.push_back(k);
    b.quadratic_part.push_back(quad);
    b.cross_part.push_back(cross);
    b.discarded_part.push_back(disc);
  }
  for (int i = 0; i < N; ++i) b.total += b.quadratic_part[i] + b.cross_part[i];
  return b;
}

double conserved_functional(const SpectralField& u, double alpha) {
  const double w = weighted_energy_norm(u, alpha, 0);
  return w * w;
}

double max_abs_rate(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size() || times.size() < 2) {
    throw std::invalid_argument("max_abs_rate: need matching series of length >= 2");
  }
  const std::size_t n = times.size();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // centred differences inside, one-sided at the ends
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == n ? n - 1 : i + 1;
    const double dt = times[hi] - times[lo];
    if (!(dt > 0.0)) throw std::invalid_argument("max_abs_rate: times must be strictly increasing");
    best = std::max(best, std::abs(values[hi] - values[lo]) / dt);
  }
  return best;
}

RateFit standard_energy_rate(std::span<const RateRun> runs) {
  if (runs.size() < 3) throw std::invalid_argument("insufficient ε samples");
  RateFit out;
  for (const RateRun& r : runs) {
    if (r.times.size() < 10) throw std::invalid_argument("standard_energy_rate: need >= 10 snapshots per run");
    const double rate = max_abs_rate(r.times, r.norm_sq);
    if (!(rate > 0.0)) throw std::invalid_argument("standard_energy_rate: zero rate, fit rejected");
    out.eps.push_back(r.eps);
    out.rates.push_back(rate);
  }
  out.fit = fit_power_law(out.eps, out.rates);
  return out;
}

}  // namespace fbbm
