#include <doctest.h>

#include <cmath>
#include <tuple>

#include "fbbm/rng.hpp"
#include "fbbm/symbol.hpp"

using namespace fbbm;

TEST_CASE("m at hand-checked points") {
  CHECK(eval_m(1, 1, 0.5) == doctest::Approx(-(1 + std::sqrt(2.0))).epsilon(1e-14));
  CHECK(eval_m(-1, 1, 0.5) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(eval_m(0, 3, 0.5) == 0.0);
  CHECK(eval_m(3, 0, 0.5) == 0.0);
  // the zero-sum value is the limit of the formula; the approach is like |xi|^al
  for (double alpha : {0.25, 0.5, 0.75}) {
    const double lim = eval_m(-1.7, 1.7, alpha);
    auto gap = [&](double h) { return std::abs(eval_m_formula(-1.7, 1.7 + h, alpha) - lim); };
    double prev = gap(1e-2);
    for (double h : {1e-4, 1e-6, 1e-8, 1e-10}) {
      const double d = gap(h);
      CHECK(d < prev);
      prev = d;
    }
    CHECK(prev <= 10 * std::pow(1e-10, alpha));
    CHECK(gap(1e-10) / std::pow(1e-10, alpha) == doctest::Approx(gap(1e-8) / std::pow(1e-8, alpha)).epsilon(0.2));
  }
  CHECK(m_zero_sum_limit(1.0, 0.5) == doctest::Approx(2 / 2.5));
}

TEST_CASE("m symmetries") {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double a = rng.uniform(-50, 50), b = rng.uniform(-50, 50), al = rng.uniform(0.05, 0.95);
    const double m = eval_m(a, b, al);
    CHECK(m == eval_m(b, a, al));
    CHECK(m == eval_m(-a, -b, al));
    CHECK(eval_m_formula(a, b, al) == doctest::Approx(m).epsilon(1e-9));
  }
}

TEST_CASE("functional relation") {
  const RelationResidual r = functional_relation_residual(2, 1, 0.5);
  CHECK(r.relative() <= 1e-12);
  // eta = xi/2: the two summands are exact negatives
  const double xi = 3.3, eta = xi / 2, al = 0.4;
  const double t1 = eval_m(xi - eta, eta, al) * eta * (1 + std::pow(xi, al));
  const double t2 = eval_m(eta - xi, xi, al) * xi * (1 + std::pow(eta, al));
  CHECK(t1 == doctest::Approx(-t2).epsilon(1e-14));
  Rng rng(9);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double x = std::copysign(std::pow(10.0, rng.uniform(-4, 4)), rng.uniform() - 0.5);
    const double y = std::copysign(std::pow(10.0, rng.uniform(-4, 4)), rng.uniform() - 0.5);
    worst = std::max(worst, functional_relation_residual(x, y, 0.5).relative());
  }
  CHECK(worst <= 1e-10);
  CHECK_THROWS(functional_relation_residual(0.0, 1.0, 0.5));
  CHECK_THROWS(functional_relation_residual(1.0, 1.0, 0.5));
}

TEST_CASE("denominator regrouping matches the textbook form") {
  Rng rng(4);
  for (int i = 0; i < 5000; ++i) {
    const double a = rng.uniform(-5, 5), b = rng.uniform(-5, 5), al = rng.uniform(0.1, 0.9);
    const double xi = a + b, pa = std::pow(std::abs(a), al), pb = std::pow(std::abs(b), al),
                 px = std::pow(std::abs(xi), al);
    const double t1 = xi * (1 + pb) * (pa - px), t2 = b * (1 + px) * (pa - pb);
    CHECK(std::abs(m_denominator(a, b, al) - (t1 - t2)) <= 1e-12 * (std::abs(t1) + std::abs(t2)));
  }
}

TEST_CASE("growth envelopes") {
  const Envelope e = growth_envelope(0.1, 0.1, 0.5);
  CHECK(e.small_regime);
  CHECK(e.lower == doctest::Approx(2.0));
  CHECK(e.upper == doctest::Approx(2 * std::sqrt(10.0)));
  const Envelope f = growth_envelope(3, 4, 0.5);
  CHECK_FALSE(f.small_regime);
  CHECK(f.upper == doctest::Approx(3.0 / 4 + 4.0 / 3));
  CHECK(growth_envelope(2, 5, 0.3).lower == doctest::Approx(growth_envelope(5, 2, 0.3).lower));
  CHECK_THROWS(growth_envelope(0, 1, 0.5));

  const GrowthReport r = verify_growth_bounds(0.5, 10000, 3);
  for (const RegimeBounds* b : {&r.small, &r.large}) {
    CHECK(b->samples > 0);
    CHECK(b->c_lower > 0.0);
    CHECK(std::isfinite(b->C_upper));
  }
  CHECK(r.small.samples + r.large.samples == 10000);
  CHECK(r.max_relation_residual <= 1e-10);

  const GrowthReport again = verify_growth_bounds(0.5, 10000, 3);
  CHECK(again.small.c_lower == r.small.c_lower);
  CHECK(again.large.C_upper == r.large.C_upper);

  GrowthSampling s;
  s.r_max = 0.1;
  const GrowthReport lo = verify_growth_bounds(0.5, 1000, 3, s);
  CHECK(lo.large.samples == 0);
  CHECK(lo.small.samples == 1000);
}

TEST_CASE("region classification") {
  CHECK(classify_region(0.5, 2, 3).region == Region::A1);
  const RegionLabel d = classify_region(10, 10, 10);
  CHECK(d.region == Region::A2c);
  CHECK(d.positive_part);
  CHECK(d.sign_uniform);
  CHECK(classify_region(10, 1.5, 10).region == Region::A2);
  CHECK_FALSE(classify_region(-10, -10, -10).positive_part);
  CHECK(classify_region(-10, -10, -10).region == Region::A2c);

  auto [mu, nu] = mu_nu_coordinates(7, 7, 7);
  CHECK(mu == 0.0);
  CHECK(nu == 0.0);
  std::tie(mu, nu) = mu_nu_coordinates(1.02 * 20, 20, 0.99 * 20);
  CHECK(mu == doctest::Approx(0.02));
  CHECK(nu == doctest::Approx(-0.01));
  CHECK_THROWS(mu_nu_coordinates(0.5, 2, 3));
  // spread 0.15 eta around xi exceeds xi/10
  CHECK(classify_region(1.05 * 20, 20, 0.95 * 20).region == Region::A2);
  CHECK_THROWS(mu_nu_coordinates(1.05 * 20, 20, 0.95 * 20));

  Rng rng(8);
  int hits = 0;
  for (int i = 0; i < 20000; ++i) {
    const double eta = rng.uniform(1, 100);
    const double x = eta * (1 + rng.uniform(-0.2, 0.2)), s = eta * (1 + rng.uniform(-0.2, 0.2));
    if (!classify_region(x, eta, s).positive_part) continue;
    ++hits;
    std::tie(mu, nu) = mu_nu_coordinates(x, eta, s);
    CHECK(std::abs(mu) + std::abs(nu) <= 0.2 + 1e-12);
  }
  CHECK(hits > 100);
}

TEST_CASE("symbol grid") {
  const SymbolGrid m(0.5, 0.25, 16, Exec::serial);
  for (int i = -16; i <= 16; ++i)
    for (int j = -16; j <= 16; ++j) CHECK(m.at(i, j) == eval_m(0.25 * i, 0.25 * j, 0.5));
  const SymbolGrid p(0.5, 0.25, 16, Exec::parallel);
  for (int i = -16; i <= 16; ++i)
    for (int j = -16; j <= 16; ++j) CHECK(m.at(i, j) == p.at(i, j));
  CHECK(m.conventions().singular_axes_value == 0.0);
}
