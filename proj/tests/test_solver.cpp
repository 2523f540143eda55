#include <doctest.h>

#include <cmath>

#include "fbbm/profiles.hpp"
#include "fbbm/rng.hpp"
#include "fbbm/solver.hpp"

using namespace fbbm;

namespace {

const GridSpec g2pi(64, kTwoPi);

SpectralField cos_mode(const GridSpec& g, int j, double amp = 1.0) {
  SpectralField f(g);
  f.set_mode(j, amp / 2);
  return f;
}

SolverConfig config(double dt, double t_end, int stride) {
  SolverConfig c;
  c.dt = dt;
  c.t_end = t_end;
  c.record_stride = stride;
  return c;
}

}  // namespace

TEST_CASE("right-hand side of cos x") {
  const SpectralField r = evolution_rhs(cos_mode(g2pi, 1), 0.5);
  // sin(kx) has mode-k coefficient 1/(2i)
  CHECK(std::abs(r.coeff(1) - cd(0, -0.25)) < 1e-15);
  CHECK(std::abs(r.coeff(2) - cd(0, -0.25 / (1 + std::sqrt(2.0)))) < 1e-15);
  CHECK(std::abs(r.coeff(0)) == 0.0);
  CHECK(evolution_rhs(SpectralField(g2pi), 0.5).max_abs() == 0.0);
  Rng rng(1);
  CHECK(std::abs(evolution_rhs(random_band_limited(g2pi, 20, rng), 0.3).coeff(0)) == 0.0);
}

TEST_CASE("configuration and stability") {
  CHECK(max_linear_frequency(g2pi, 0.5) > 0.0);
  CHECK(stability_limit(g2pi, 0.5) == doctest::Approx(2.5 / max_linear_frequency(g2pi, 0.5)));
  CHECK_THROWS(config(1.0, 1.0, 1).validate(g2pi, 0.5));
  CHECK_THROWS(config(-1e-3, 1.0, 1).validate(g2pi, 0.5));
  CHECK_THROWS(config(1e-3, 1.0, 0).validate(g2pi, 0.5));
  CHECK_NOTHROW(config(1e-2, 1.0, 1).validate(g2pi, 0.5));
  SpectralField k = cos_mode(g2pi, 1);
  k.set_mode(0, 1.0);
  CHECK_THROWS(integrate(k, config(1e-2, 1, 1), FracParams(0.5, 2)));
}

TEST_CASE("trajectory record") {
  const FracParams fp(0.5, 3);
  const TrajectoryRecord rec = integrate(0.1 * default_profile(g2pi, 3.25), config(0.01, 1.0, 10), fp);
  REQUIRE(rec.times.size() == 11);
  CHECK(rec.sobolev_norms.size() == rec.times.size());
  CHECK(rec.energy_breakdowns.size() == rec.times.size());
  CHECK(rec.conserved_values.size() == rec.times.size());
  for (std::size_t i = 1; i < rec.times.size(); ++i) CHECK(rec.times[i] > rec.times[i - 1]);
  CHECK(rec.times.back() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rec.sobolev_indices[1] == 2.25);
  CHECK(rec.sobolev_indices[2] == 3.25);
  CHECK(rec.final_state.coeff(0) == cd{});

  const TrajectoryRecord zero = integrate(SpectralField(g2pi), config(0.01, 1.0, 10), fp);
  CHECK(zero.final_state.max_abs() == 0.0);
}

TEST_CASE("conservation and order") {
  const FracParams fp(0.5, 2);
  const TrajectoryRecord rec = integrate(1e-3 * cos_mode(g2pi, 1), config(1e-2, 10, 100), fp);
  const double c0 = rec.conserved_values.front();
  for (double c : rec.conserved_values) CHECK(std::abs(c - c0) <= 1e-10 * c0);

  const SpectralField u0 = 0.2 * default_profile(g2pi, 2.25);
  auto end = [&](double dt) { return integrate(u0, config(dt, 1, 1 << 30), fp).final_state; };
  const SpectralField ref = end(1.0 / 1280);
  const double e1 = sobolev_norm(end(0.1) - ref, 0), e2 = sobolev_norm(end(0.05) - ref, 0),
               e3 = sobolev_norm(end(0.025) - ref, 0);
  CHECK(e1 / e2 >= 15);
  CHECK(e2 / e3 >= 15);
}

TEST_CASE("reversibility") {
  const double alpha = 0.5;
  SpectralField u = 0.3 * default_profile(g2pi, 2.25);
  const SpectralField u0 = u;
  for (int i = 0; i < 100; ++i) u = rk4_step(u, 0.01, alpha);
  for (int i = 0; i < 100; ++i) u = rk4_step(u, -0.01, alpha);
  CHECK(sobolev_norm(u - u0, 0) <= 1e-9 * sobolev_norm(u0, 0));
}

TEST_CASE("drift abort keeps the partial record") {
  TrajectoryRecord rec;
  SolverConfig c = config(0.05, 5.0, 1);
  c.drift_abort_threshold = 1e-16;
  CHECK_THROWS_AS(integrate_into(rec, 0.5 * default_profile(g2pi, 2.25), c, FracParams(0.5, 2)), DriftAbort);
  CHECK(rec.times.size() >= 1);
}

TEST_CASE("lifespan probe") {
  const FracParams fp(0.5, 2);
  const SpectralField p = default_profile(g2pi, fp.energy_index());
  LifespanOptions o;
  o.growth_factor = 1.0;
  const ProbeResult r = lifespan_probe(p, 0.1, fp, o);
  CHECK(r.status == ProbeStatus::crossed);
  CHECK(r.time == 0.0);

  LifespanOptions q;
  q.cap_multiplier = 0.5;
  const ProbeResult a = lifespan_probe(p, 0.1, fp, q), b = lifespan_probe(p, 0.2, fp, q);
  CHECK(a.status == ProbeStatus::capped);
  CHECK(a.time == doctest::Approx(50.0));
  CHECK(b.time <= a.time);
  CHECK(a.max_norm_ratio >= 1.0);
  CHECK(std::string(probe_status_name(ProbeStatus::resolution_loss)) == "resolution-loss");

  // a large growth factor never crosses; a small one does at large amplitude
  LifespanOptions s;
  s.growth_factor = 1.01;
  s.cap_multiplier = 4.0;
  const ProbeResult c = lifespan_probe(p, 0.4, fp, s);
  CHECK(c.status == ProbeStatus::crossed);
  CHECK(c.time > 0.0);
  CHECK(c.time < c.cap);
  CHECK_THROWS(lifespan_probe(p, -0.1, fp));
}
