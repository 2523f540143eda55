// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fbbm/energy.hpp"
#include "fbbm/lab.hpp"
#include "fbbm/normal_form.hpp"
#include "fbbm/profiles.hpp"
#include "fbbm/quartic_forms.hpp"
#include "fbbm/rng.hpp"
#include "fbbm/symbol.hpp"

using namespace fbbm;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(double a, double b) {
  const double s = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / s;
}

// 1 --------------------------------------------------------------------------
Outcome symbol_identities() {
  const double alpha = 0.5;
  Rng rng(11);
  double worst_rel = 0.0, worst_sym = 0.0;
  int checked = 0;
  auto check = [&](double xi, double eta) {
    if (xi == 0.0 || eta == 0.0 || xi == eta) return;
    worst_rel = std::max(worst_rel, functional_relation_residual(xi, eta, alpha).relative());
    const double a = xi - eta;
    worst_sym = std::max(worst_sym, rel(eval_m(a, eta, alpha), eval_m(eta, a, alpha)));
    ++checked;
  };
  for (int i = 0; i < 10000; ++i) {
    const double xi = std::copysign(std::pow(10.0, rng.uniform(-4, 4)), rng.uniform() - 0.5);
    const double eta = std::copysign(std::pow(10.0, rng.uniform(-4, 4)), rng.uniform() - 0.5);
    check(xi, eta);
  }
  const GridSpec g(128, kTwoPi * 16);
  for (int i = g.min_index(); i <= g.max_index(); ++i)
    for (int j = g.min_index(); j <= g.max_index(); ++j) check(g.frequency(i), g.frequency(j));
  return {worst_rel <= 1e-10 && worst_sym <= 1e-12,
          fmt("pairs=%d max relation residual=%.2e max symmetry defect=%.2e", checked, worst_rel, worst_sym)};
}

// 2 --------------------------------------------------------------------------
Outcome growth_envelopes() {
  bool ok = true;
  std::string d;
  for (double alpha : {0.25, 0.5, 0.75}) {
    const GrowthReport r = verify_growth_bounds(alpha, 10000, 7);
    for (const RegimeBounds* b : {&r.small, &r.large}) {
      const bool good = b->samples > 0 && std::isfinite(b->c_lower) && b->c_lower > 0.0 &&
                        std::isfinite(b->C_upper) && b->C_upper > 0.0;
      ok = ok && good;
    }
    d += fmt("al=%.2f small[c=%.3g C=%.3g] large[c=%.3g C=%.3g] ", alpha, r.small.c_lower, r.small.C_upper,
             r.large.c_lower, r.large.C_upper);
  }
  return {ok, d};
}

// 3 --------------------------------------------------------------------------
Outcome quadratic_cancellation() {
  const GridSpec g = experiment_grid();
  double worst = 0.0;
  for (double alpha : {0.25, 0.5, 0.75}) {
    const BilinearOperator P(alpha, g);
    Rng rng(3);
    const SpectralField shape = random_band_limited(g, g.n_modes / 6, rng);
    for (double eps : {1e-1, 1e-2, 1e-3})
      worst = std::max(worst, P.quadratic_cancellation(eps / sobolev_norm(shape, 0) * shape).relative());
  }
  return {worst <= 1e-10, fmt("max relative residual=%.2e", worst)};
}

// 4 --------------------------------------------------------------------------
Outcome lattice_identities() {
  const GridSpec g(64, kTwoPi * 16);
  const double alpha = 0.5;
  double w0 = 0, w1 = 0, wk = 0, wt = 0;
  Rng rng(4);
  for (int draw = 0; draw < 20; ++draw) {
    const SpectralField u = random_band_limited(g, g.dealias_cutoff(), rng);
    for (int k = 1; k <= 3; ++k) {
      const QuarticReport r = quartic_report(u, alpha, k);
      w0 = std::max(w0, r.residual_G0_plus_F0);
      w1 = std::max(w1, r.residual_G1_minus_2F1);
      wk = std::max(wk, r.residual_Gk_reduced);
      wt = std::max({wt, rel(r.F10_triple, r.F10), rel(r.G10_triple, r.G10)});
    }
  }
  const double worst = std::max({w0, w1, wk, wt});
  return {worst <= 1e-10, fmt("G0+F0=%.2e G1-2F1-corr=%.2e Gk-reduced=%.2e triple-vs-inner=%.2e", w0, w1, wk, wt)};
}

// 5 --------------------------------------------------------------------------
Outcome region_partition() {
  const GridSpec g(64, kTwoPi * 16);
  const double alpha = 0.5;
  Rng rng(5);
  double worst = 0.0;
  long a2c = 0, bad = 0;
  for (int draw = 0; draw < 3; ++draw) {
    const SpectralField u = random_band_limited(g, g.dealias_cutoff(), rng);
    for (int k = 2; k <= 3; ++k) {
      const F10G10 all = compute_F10_G10(u, alpha, k);
      F10G10 sum;
      for (Region reg : {Region::A1, Region::A2, Region::A2c}) {
        const F10G10 part = compute_F10_G10(u, alpha, k, reg);
        sum.F10 += part.F10;
        sum.G10 += part.G10;
      }
      worst = std::max({worst, rel(sum.F10, all.F10), rel(sum.G10, all.G10)});
      const TripleSums t = QuarticForms(u, alpha).triple(k);
      a2c += t.a2c_triples;
      bad += t.a2c_not_sign_uniform;
    }
  }
  return {worst <= 1e-12 && bad == 0,
          fmt("max reconstruction defect=%.2e A2c triples=%ld not sign-uniform=%ld", worst, a2c, bad)};
}

// 6 --------------------------------------------------------------------------
Outcome kernel_bound() {
  bool ok = true;
  std::string d;
  for (double alpha : {0.25, 0.5, 0.75}) {
    const KernelBoundReport r = sample_kernel_bound(alpha, 10000, 6);
    ok = ok && r.accepted == 10000 && std::isfinite(r.max_ratio) && r.diagonal_tilde <= 1e-12 && r.diagonal_N <= 1e-12;
    d += fmt("al=%.2f max=%.4f diag=%.1e ", alpha, r.max_ratio, std::max(r.diagonal_tilde, r.diagonal_N));
  }
  return {ok, d};
}

// 7 --------------------------------------------------------------------------
Outcome energy_derivative() {
  const GridSpec g = experiment_grid();
  const double alpha = 0.5;
  const SpectralField u = 0.3 * default_profile(g, 2 + alpha / 2);
  bool ok = true;
  std::string d;
  for (int k : {1, 2}) {
    std::vector<double> mis;
    for (double dt : {1e-2, 5e-3, 2.5e-3}) mis.push_back(verify_dEk_dt(u, alpha, k, dt).mismatch);
    const double r1 = mis[0] / mis[1], r2 = mis[1] / mis[2];
    ok = ok && r1 >= 3.8 && r2 >= 3.8;
    d += fmt("k=%d ratios %.3f %.3f ", k, r1, r2);
  }
  return {ok, d};
}

// 8 --------------------------------------------------------------------------
Outcome conservation() {
  const GridSpec g = experiment_grid();
  const FracParams fp(0.5, 2);
  const SpectralField p = default_profile(g, fp.energy_index());
  SolverConfig sc;
  sc.dt = 1e-3;
  sc.t_end = 10;
  sc.record_stride = 100;
  const TrajectoryRecord rec = integrate(1e-2 * p, sc, fp);
  const double c0 = rec.conserved_values.front();
  double drift = 0.0;
  for (double c : rec.conserved_values) drift = std::max(drift, std::abs(c - c0) / c0);

  auto final_state = [&](double dt) {
    SolverConfig c;
    c.dt = dt;
    c.t_end = 1;
    c.record_stride = 1 << 30;
    return integrate(0.1 * p, c, fp).final_state;
  };
  const SpectralField ref = final_state(1.0 / 1600);
  std::vector<double> err;
  for (double dt : {0.1, 0.05, 0.025}) err.push_back(sobolev_norm(final_state(dt) - ref, 0));
  const double r1 = err[0] / err[1], r2 = err[1] / err[2];
  return {drift <= 1e-10 && r1 >= 15 && r2 >= 15, fmt("drift=%.2e RK4 ratios %.2f %.2f", drift, r1, r2)};
}

// 9 --------------------------------------------------------------------------
Outcome scaling_exponents() {
  const GridSpec g = experiment_grid();
  const FracParams fp(0.5, 2);
  const EnergyRateSweep s = energy_rate_sweep(default_profile(g, fp.energy_index()), {0.05, 0.1, 0.2, 0.4}, fp);
  const double a = s.modified.fit_exponent, b = s.standard.fit_exponent;
  return {std::abs(a - 4.0) <= 0.3 && std::abs(b - 3.0) <= 0.3,
          fmt("modified slope=%.3f+-%.3f standard slope=%.3f+-%.3f", a, s.modified.fit_stderr, b,
              s.standard.fit_stderr)};
}

// 10 -------------------------------------------------------------------------
Outcome lifespan() {
  const GridSpec g = experiment_grid();
  const FracParams fp(0.5, 2);
  const LifespanSweep s = lifespan_sweep(default_profile(g, fp.energy_index()), {0.05, 0.1, 0.2, 0.4}, fp);
  int capped = 0, crossed = 0, lost = 0;
  for (const ProbeResult& p : s.probes) {
    capped += p.status == ProbeStatus::capped;
    crossed += p.status == ProbeStatus::crossed;
    lost += p.status == ProbeStatus::resolution_loss;
  }
  std::string d = fmt("crossed=%d capped=%d lost=%d monotone=%d doubling=%d", crossed, capped, lost,
                      s.scaled_time_monotone, s.doubling_consistent);
  if (s.all_capped) d += " (" + s.result.note + ")";
  return {lost == 0 && s.scaled_time_monotone && s.doubling_consistent, d};
}

// 11 -------------------------------------------------------------------------
Outcome equivalence_band() {
  const GridSpec g = experiment_grid();
  const double alpha = 0.5;
  const BilinearOperator P(alpha, g);
  bool ok = true;
  std::string d;
  for (int N : {2, 3}) {
    const double s = N + alpha / 2;
    double lo = 1e300, hi = 0.0, rmin = 1e300, rmax = 0.0;
    for (double eps : {1e-2, 5e-3, 2e-3, 1e-3, 1e-4}) {
      const SpectralField u = eps * default_profile(g, s);
      const EnergyBreakdown b = modified_energy(P, u, N);
      double q = b.zero_level;
      for (double x : b.quadratic_part) q += x;
      const double ratio = b.total / std::pow(sobolev_norm(u, s), 2);
      const double c = std::abs(b.total / q - 1.0) / eps;
      rmin = std::min(rmin, ratio);
      rmax = std::max(rmax, ratio);
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    // deviation linear in eps: the per-eps constants agree within a factor 2
    ok = ok && rmin >= 0.5 && rmax <= 2.0 && std::isfinite(hi) && hi <= 2.0 * lo;
    d += fmt("N=%d ratio in [%.4f, %.4f] C=%.4f ", N, rmin, rmax, hi);
  }
  return {ok, d};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"symbol identities", symbol_identities},
      {"growth envelopes", growth_envelopes},
      {"quadratic cancellation", quadratic_cancellation},
      {"exact lattice identities", lattice_identities},
      {"region partition", region_partition},
      {"kernel bound", kernel_bound},
      {"energy-derivative reconstruction", energy_derivative},
      {"conservation and RK4 order", conservation},
      {"scaling exponents", scaling_exponents},
      {"lifespan consistency", lifespan},
      {"equivalence band", equivalence_band},
  };
  int failed = 0, idx = 0;
  for (const auto& [name, fn] : criteria) {
    ++idx;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("%s %2d %-34s %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", idx, name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", idx - failed, criteria.size());
  return failed ? 1 : 0;
}
