#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fbbm/energy.hpp"
#include "fbbm/normal_form.hpp"
#include "fbbm/profiles.hpp"
#include "fbbm/rng.hpp"

using namespace fbbm;
using std::numbers::pi;

namespace {

const GridSpec g2pi(64, kTwoPi);

SpectralField cos_mode(const GridSpec& g, int j, double amp = 1.0) {
  SpectralField f(g);
  f.set_mode(j, amp / 2);
  return f;
}

}  // namespace

TEST_CASE("single-mode energies") {
  const BilinearOperator P(0.5, g2pi);
  for (double eps : {1.0, 0.1, 0.01}) {
    const SpectralField u = eps * cos_mode(g2pi, 1);
    CHECK(partial_energy(P, u, 1).quadratic == doctest::Approx(2 * pi * eps * eps).epsilon(1e-14));
    CHECK(conserved_functional(u, 0.5) == doctest::Approx(2 * pi * eps * eps).epsilon(1e-14));
    CHECK(conserved_functional(u, 0.2) == doctest::Approx(2 * pi * eps * eps).epsilon(1e-14));
  }
  const PartialEnergy z = partial_energy(P, SpectralField(g2pi), 2);
  CHECK(z.quadratic == 0.0);
  CHECK(z.cross == 0.0);
  CHECK_THROWS(partial_energy(P, cos_mode(g2pi, 1), 0));
}

TEST_CASE("cross term is cubic, quadratic term is quadratic") {
  const BilinearOperator P(0.5, g2pi);
  const SpectralField u = default_profile(g2pi, 2.25);
  const PartialEnergy ref = partial_energy(P, u, 2);
  REQUIRE(std::abs(ref.cross) > 0.0);
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    const PartialEnergy e = partial_energy(P, eps * u, 2);
    CHECK(e.cross / std::pow(eps, 3) == doctest::Approx(ref.cross).epsilon(1e-12));
    CHECK(e.quadratic / (eps * eps) == doctest::Approx(ref.quadratic).epsilon(1e-13));
    // cross / quadratic^{3/2} independent of eps
    CHECK(e.cross / std::pow(e.quadratic, 1.5) == doctest::Approx(ref.cross / std::pow(ref.quadratic, 1.5)).epsilon(1e-11));
  }
}

TEST_CASE("cross term against a physical-space oracle") {
  // 2 <d^k Lam^{1/2} u, d^k Lam^{1/2} P(u,u)> = 2 L sum xi^{2k} (1+|xi|^al) Re(u conj(P))
  const double alpha = 0.5;
  const BilinearOperator P(alpha, g2pi);
  Rng rng(2);
  const SpectralField u = random_band_limited(g2pi, 8, rng);
  const SpectralField p = P.apply_undealiased(u, u);
  for (int k = 1; k <= 3; ++k) {
    double s = 0.0;
    for (int j = g2pi.min_index(); j <= g2pi.max_index(); ++j) {
      const double xi = g2pi.frequency(j);
      s += std::pow(xi, 2 * k) * (1 + std::pow(std::abs(xi), alpha)) * (u.coeff(j) * std::conj(p.coeff(j))).real();
    }
    CHECK(partial_energy(P, u, k).cross == doctest::Approx(2 * g2pi.domain_length * s).epsilon(1e-12));
  }
}

TEST_CASE("modified energy breakdown") {
  const BilinearOperator P(0.5, g2pi);
  const EnergyBreakdown z = modified_energy(P, SpectralField(g2pi), 2);
  CHECK(z.total == 0.0);
  CHECK_THROWS(modified_energy(P, cos_mode(g2pi, 1), 1));

  const SpectralField u = 0.05 * default_profile(g2pi, 3.25);
  const EnergyBreakdown b = modified_energy(P, u, 3);
  REQUIRE(b.k_values == std::vector<int>{1, 2, 3});
  double sum = b.zero_level;
  for (std::size_t i = 0; i < b.k_values.size(); ++i) {
    CHECK(b.quadratic_part[i] >= 0.0);
    CHECK(b.discarded_part[i] >= 0.0);
    sum += b.quadratic_part[i] + b.cross_part[i];
  }
  CHECK(b.total == sum);
  CHECK(b.zero_level == doctest::Approx(conserved_functional(u, 0.5)).epsilon(1e-14));
}

TEST_CASE("equivalence band") {
  const double alpha = 0.5;
  const BilinearOperator P(alpha, g2pi);
  for (int N : {2, 3}) {
    const double s = N + alpha / 2;
    const SpectralField prof = default_profile(g2pi, s);
    double c_min = 1e300, c_max = 0.0;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      const SpectralField u = eps * prof;
      const EnergyBreakdown b = modified_energy(P, u, N);
      double q = b.zero_level;
      for (double x : b.quadratic_part) q += x;
      const double ratio = b.total / std::pow(sobolev_norm(u, s), 2);
      CHECK(ratio >= 0.5);
      CHECK(ratio <= 2.0);
      const double c = std::abs(b.total / q - 1) / eps;
      c_min = std::min(c_min, c);
      c_max = std::max(c_max, c);
    }
    CHECK(c_max <= 1.01 * c_min);
  }
}

TEST_CASE("conserved functional is translation invariant") {
  Rng rng(4);
  const SpectralField u = random_band_limited(g2pi, 10, rng);
  SpectralField v = u;
  for (int j = g2pi.min_index(); j <= g2pi.max_index(); ++j) v.coeff(j) *= std::polar(1.0, 0.37 * j);
  CHECK(conserved_functional(v, 0.5) == doctest::Approx(conserved_functional(u, 0.5)).epsilon(1e-14));
}

TEST_CASE("standard energy rate") {
  std::vector<RateRun> runs;
  for (double eps : {0.05, 0.1, 0.2, 0.4}) {
    RateRun r;
    r.eps = eps;
    for (int i = 0; i < 11; ++i) {
      const double t = 0.1 * i;
      r.times.push_back(t);
      r.norm_sq.push_back(eps * eps + 5 * std::pow(eps, 3) * t);
    }
    runs.push_back(r);
  }
  const RateFit f = standard_energy_rate(runs);
  CHECK(f.fit.exponent == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(f.rates[0] == doctest::Approx(5 * std::pow(0.05, 3)).epsilon(1e-10));

  CHECK_THROWS_WITH(standard_energy_rate(std::span<const RateRun>(runs.data(), 1)), "insufficient ε samples");
  std::vector<RateRun> flat = runs;
  for (RateRun& r : flat) std::fill(r.norm_sq.begin(), r.norm_sq.end(), 0.0);
  CHECK_THROWS(standard_energy_rate(flat));
  std::vector<RateRun> short_runs = runs;
  for (RateRun& r : short_runs) {
    r.times.resize(5);
    r.norm_sq.resize(5);
  }
  CHECK_THROWS(standard_energy_rate(short_runs));

  const std::vector<double> t{0, 1, 2, 3}, y{0, 1, 4, 9};
  CHECK(max_abs_rate(t, y) == 5.0);  // one-sided at the right end
  CHECK_THROWS(max_abs_rate(std::vector<double>{0, 0}, std::vector<double>{1, 2}));
}
