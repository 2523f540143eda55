#include "fbbm/lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fbbm/energy.hpp"
#include "fbbm/normal_form.hpp"
#include "fbbm/profiles.hpp"
#include "fbbm/quartic_forms.hpp"
#include "fbbm/symbol.hpp"

namespace fbbm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void fit_ok_points(SweepResult& r, const std::vector<bool>& use) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < r.eps_list.size(); ++i) {
    if (use[i]) {
      x.push_back(r.eps_list[i]);
      y.push_back(r.measured[i]);
    }
  }
  r.fit_points = static_cast<int>(x.size());
  if (x.size() < 2) {
    r.fit_exponent = kNaN;
    r.fit_stderr = kNaN;
    return;
  }
  const PowerFit f = fit_power_law(x, y);
  r.fit_exponent = f.exponent;
  r.fit_stderr = f.stderr_exponent;
}

void require_distinct(const std::vector<double>& eps, std::size_t min_count, const char* what) {
  if (eps.empty()) throw std::invalid_argument(std::string(what) + ": empty eps list");
  std::vector<double> s = eps;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw std::invalid_argument(std::string(what) + ": eps values must be distinct");
  }
  if (eps.size() < min_count) {
    throw std::invalid_argument(std::string(what) + ": need at least " + std::to_string(min_count) +
                                " eps values");
  }
  for (double e : eps) {
    if (!(e > 0.0)) throw std::invalid_argument(std::string(what) + ": eps values must be positive");
  }
}

}  // namespace

const char* point_status_name(PointStatus s) {
  switch (s) {
    case PointStatus::ok: return "ok";
    case PointStatus::capped: return "capped";
    case PointStatus::resolution_loss: return "resolution-loss";
  }
  return "?";
}

EnergyRateSweep energy_rate_sweep(const SpectralField& profile, const std::vector<double>& eps_list,
                                  const FracParams& params, const EnergyRateOptions& opt) {
  params.validate();
  require_distinct(eps_list, 4, "energy_rate_sweep");
  if (opt.snapshots < 10) throw std::invalid_argument("energy_rate_sweep: need >= 10 snapshots");
  if (!(opt.window > 0.0) || !(opt.dt > 0.0)) throw std::invalid_argument("energy_rate_sweep: bad window or dt");
  const double alpha = params.alpha;
  const double s = params.energy_index();
  const int n = static_cast<int>(eps_list.size());
  const double gap = opt.window / (opt.snapshots - 1);
  const int sub = static_cast<int>(std::ceil(gap / opt.dt - 1e-9));
  const double h = gap / sub;
  SolverConfig probe;
  probe.dt = h;
  probe.validate(profile.grid(), alpha);

  std::vector<double> mod(n, kNaN);
  std::vector<RateRun> runs(n);
  std::vector<char> ok(n, 0);  // not vector<bool>: written concurrently
  for_each_row(0, n - 1, Exec::parallel, [&](int i) {
    try {
      SpectralField u = eps_list[i] * profile;
      double best = 0.0;
      RateRun& run = runs[i];
      run.eps = eps_list[i];
      for (int p = 0; p < opt.snapshots; ++p) {
        if (p > 0) {
          for (int q = 0; q < sub; ++q) u = rk4_step(u, h, alpha);
        }
        const QuarticForms forms(u, alpha, Exec::serial);
        double rate = 0.0;
        for (int k = 1; k <= params.sobolev_N; ++k) rate += forms.dEk_dt(k);
        const double norm = sobolev_norm(u, s);
        if (!std::isfinite(rate) || !std::isfinite(norm)) return;
        best = std::max(best, std::abs(rate));
        run.times.push_back(p * gap);
        run.norm_sq.push_back(norm * norm);
      }
      mod[i] = best;
      ok[i] = 1;
    } catch (const std::exception&) {
      // flagged below
    }
  });

  EnergyRateSweep out;
  out.modified.eps_list = eps_list;
  out.standard.eps_list = eps_list;
  std::vector<RateRun> good;
  for (int i = 0; i < n; ++i) {
    const PointStatus st = ok[i] ? PointStatus::ok : PointStatus::resolution_loss;
    out.modified.flags.push_back(st);
    out.standard.flags.push_back(st);
    out.modified.measured.push_back(mod[i]);
    out.standard.measured.push_back(ok[i] ? max_abs_rate(runs[i].times, runs[i].norm_sq) : kNaN);
    if (ok[i]) good.push_back(runs[i]);
  }
  if (good.empty()) throw std::runtime_error("energy_rate_sweep: all-flagged sweep");
  fit_ok_points(out.modified, std::vector<bool>(ok.begin(), ok.end()));
  if (good.size() >= 3) {
    const RateFit rf = standard_energy_rate(good);
    out.standard.fit_exponent = rf.fit.exponent;
    out.standard.fit_stderr = rf.fit.stderr_exponent;
    out.standard.fit_points = rf.fit.points;
  } else {
    out.standard.fit_exponent = kNaN;
    out.standard.fit_stderr = kNaN;
    out.standard.note = "insufficient ε samples";
  }
  return out;
}

LifespanSweep lifespan_sweep(const SpectralField& profile, const std::vector<double>& eps_list,
                             const FracParams& params, const LifespanOptions& opt) {
  params.validate();
  require_distinct(eps_list, 1, "lifespan_sweep");
  const int n = static_cast<int>(eps_list.size());
  std::vector<ProbeResult> probes(n);
  std::vector<std::string> errors(n);
  for_each_row(0, n - 1, Exec::parallel, [&](int i) {
    try {
      probes[i] = lifespan_probe(profile, eps_list[i], params, opt);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  for (int i = 0; i < n; ++i) {
    if (!errors[i].empty()) throw std::invalid_argument("lifespan_sweep: " + errors[i]);
  }

  LifespanSweep out;
  out.probes = probes;
  SweepResult& r = out.result;
  r.eps_list = eps_list;
  std::vector<bool> crossed(n, false);
  out.all_capped = true;
  for (int i = 0; i < n; ++i) {
    r.measured.push_back(probes[i].time);
    switch (probes[i].status) {
      case ProbeStatus::crossed:
        r.flags.push_back(PointStatus::ok);
        crossed[i] = true;
        out.all_capped = false;
        break;
      case ProbeStatus::capped: r.flags.push_back(PointStatus::capped); break;
      case ProbeStatus::resolution_loss:
        r.flags.push_back(PointStatus::resolution_loss);
        out.all_capped = false;
        break;
    }
  }
  fit_ok_points(r, crossed);
  if (out.all_capped) r.note = "theorem-consistent at cap";

  // scaled lifespan along decreasing eps, resolution-loss probes excluded
  std::vector<int> order;
  for (int i = 0; i < n; ++i) {
    if (probes[i].status != ProbeStatus::resolution_loss) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) { return eps_list[a] > eps_list[b]; });
  out.scaled_time_monotone = true;
  for (std::size_t p = 1; p < order.size(); ++p) {
    const double prev = probes[order[p - 1]].time * eps_list[order[p - 1]] * eps_list[order[p - 1]];
    const double cur = probes[order[p]].time * eps_list[order[p]] * eps_list[order[p]];
    if (cur < prev * (1.0 - 1e-12)) out.scaled_time_monotone = false;
  }
  out.doubling_consistent = true;
  for (int i = 0; i < n; ++i) {
    if (!crossed[i]) continue;
    for (int j = 0; j < n; ++j) {
      if (std::abs(eps_list[j] - 2.0 * eps_list[i]) > 1e-12 * eps_list[j]) continue;
      if (probes[j].status == ProbeStatus::resolution_loss) continue;
      if (probes[i].time < probes[j].time / 4.0) out.doubling_consistent = false;
    }
  }
  return out;
}

// ---- experiment drivers -------------------------------------------------------

namespace {

using nlohmann::json;

class ArtifactWriter {
 public:
  explicit ArtifactWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }
  void write(const std::string& name, const std::string& content) {
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
    out << content;
    outputs_.push_back(name);
  }
  void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }
  const std::vector<std::string>& outputs() const { return outputs_; }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> outputs_;
};

json sweep_json(const SweepResult& r) {
  json j;
  j["eps"] = r.eps_list;
  j["measured"] = r.measured;
  std::vector<std::string> flags;
  for (PointStatus s : r.flags) flags.push_back(point_status_name(s));
  j["flags"] = flags;
  j["fit_exponent"] = r.fit_exponent;
  j["fit_stderr"] = r.fit_stderr;
  j["fit_points"] = r.fit_points;
  j["note"] = r.note;
  return j;
}

json breakdown_json(const EnergyBreakdown& b) {
  return json{{"k", b.k_values},           {"quadratic", b.quadratic_part}, {"cross", b.cross_part},
              {"discarded", b.discarded_part}, {"zero_level", b.zero_level},  {"total", b.total}};
}

SpectralField experiment_profile(const ExperimentConfig& cfg) {
  return named_profile(cfg.profile, cfg.grid(), cfg.params().energy_index(), cfg.seed);
}

double first_eps(const ExperimentConfig& cfg) {
  if (cfg.eps.empty()) throw std::invalid_argument("empty eps list");
  return cfg.eps.front();
}

void run_simulate(const ExperimentConfig& cfg, ArtifactWriter& out) {
  const FracParams params = cfg.params();
  const SpectralField u0 = first_eps(cfg) * experiment_profile(cfg);
  SolverConfig sc;
  sc.dt = cfg.dt;
  sc.t_end = cfg.t_end;
  sc.record_stride = cfg.record_stride;
  sc.drift_abort_threshold = cfg.drift_abort_threshold;
  const BilinearOperator P(params.alpha, cfg.grid());
  TrajectoryRecord rec;
  auto dump = [&] {
    std::string csv = "t,norm_s0,norm_s2,norm_sN,E_N,conserved\n";
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
      csv += num(rec.times[i]);
      for (double v : rec.sobolev_norms[i]) csv += "," + num(v);
      csv += "," + num(rec.energy_breakdowns[i].total) + "," + num(rec.conserved_values[i]) + "\n";
    }
    out.write("trajectory.csv", csv);
  };
  try {
    integrate_into(rec, u0, sc, params, &P);
  } catch (...) {
    dump();
    throw;
  }
  dump();
}

void run_sweep_lifespan(const ExperimentConfig& cfg, ArtifactWriter& out) {
  LifespanOptions opt;
  opt.dt = cfg.dt;
  opt.growth_factor = cfg.growth_factor;
  opt.cap_multiplier = cfg.cap_multiplier;
  opt.drift_abort_threshold = cfg.drift_abort_threshold;
  const LifespanSweep s = lifespan_sweep(experiment_profile(cfg), cfg.eps, cfg.params(), opt);
  std::string csv = "eps,T,status,T_eps2,cap,max_norm_ratio\n";
  std::string dat = "# eps T T*eps^2\n";
  for (const ProbeResult& p : s.probes) {
    csv += num(p.eps) + "," + num(p.time) + "," + probe_status_name(p.status) + "," + num(p.time * p.eps * p.eps) +
           "," + num(p.cap) + "," + num(p.max_norm_ratio) + "\n";
    dat += num(p.eps) + " " + num(p.time) + " " + num(p.time * p.eps * p.eps) + "\n";
  }
  out.write("lifespan.csv", csv);
  out.write("lifespan.dat", dat);
  json j = sweep_json(s.result);
  j["all_capped"] = s.all_capped;
  j["scaled_time_monotone"] = s.scaled_time_monotone;
  j["doubling_consistent"] = s.doubling_consistent;
  j["cap_multiplier"] = cfg.cap_multiplier;
  j["growth_factor"] = cfg.growth_factor;
  out.write_json("lifespan.json", j);
}

void run_sweep_energy_rate(const ExperimentConfig& cfg, ArtifactWriter& out) {
  EnergyRateOptions opt;
  opt.window = cfg.window;
  opt.snapshots = cfg.snapshots;
  opt.dt = cfg.dt;
  const EnergyRateSweep s = energy_rate_sweep(experiment_profile(cfg), cfg.eps, cfg.params(), opt);
  std::string csv = "eps,modified_rate,standard_rate,status\n";
  std::string dat = "# eps modified_rate standard_rate\n";
  for (std::size_t i = 0; i < s.modified.eps_list.size(); ++i) {
    csv += num(s.modified.eps_list[i]) + "," + num(s.modified.measured[i]) + "," + num(s.standard.measured[i]) +
           "," + point_status_name(s.modified.flags[i]) + "\n";
    dat += num(s.modified.eps_list[i]) + " " + num(s.modified.measured[i]) + " " + num(s.standard.measured[i]) + "\n";
  }
  out.write("energy_rate.csv", csv);
  out.write("energy_rate.dat", dat);
  out.write_json("energy_rate.json", json{{"modified", sweep_json(s.modified)}, {"standard", sweep_json(s.standard)}});
}

void run_verify_symbol(const ExperimentConfig& cfg, ArtifactWriter& out) {
  const GrowthReport r = verify_growth_bounds(cfg.alpha, cfg.samples, cfg.seed);
  auto regime = [](const RegimeBounds& b) {
    return json{{"samples", b.samples},
                {"c_lower", b.c_lower},
                {"C_upper", b.C_upper},
                {"max_over_lower", b.max_over_lower},
                {"min_over_upper", b.min_over_upper}};
  };
  out.write_json("symbol.json", json{{"alpha", r.alpha},
                                     {"n_samples", r.n_samples},
                                     {"seed", r.seed},
                                     {"r_min", r.r_min},
                                     {"r_max", r.r_max},
                                     {"angular_margin", r.angular_margin},
                                     {"small", regime(r.small)},
                                     {"large", regime(r.large)},
                                     {"max_relation_residual", r.max_relation_residual}});
}

void run_verify_cancellation(const ExperimentConfig& cfg, ArtifactWriter& out) {
  const GridSpec grid = cfg.grid();
  const BilinearOperator P(cfg.alpha, grid);
  SpectralField base;
  if (cfg.profile == "random") {
    Rng rng(cfg.seed);
    base = random_band_limited(grid, grid.n_modes / 6, rng);
  } else {
    base = named_profile(cfg.profile, grid, cfg.params().energy_index(), cfg.seed);
  }
  std::string csv = "alpha,n_modes,eps,residual,scale,relative\n";
  for (double e : cfg.eps) {
    const auto c = P.quadratic_cancellation(e * base);
    csv += num(cfg.alpha) + "," + std::to_string(grid.n_modes) + "," + num(e) + "," + num(c.residual) + "," +
           num(c.scale) + "," + num(c.relative()) + "\n";
  }
  out.write("cancellation.csv", csv);
}

void run_verify_identities(const ExperimentConfig& cfg, ArtifactWriter& out) {
  const GridSpec grid = cfg.grid();
  json draws = json::array();
  for (int d = 0; d < cfg.draws; ++d) {
    const SpectralField u = named_profile(cfg.profile, grid, cfg.params().energy_index(), cfg.seed + d);
    const QuarticReport r = quartic_report(first_eps(cfg) * u, cfg.alpha, cfg.k);
    draws.push_back(json{{"seed", cfg.seed + d},
                         {"k", r.k},
                         {"alpha", r.alpha},
                         {"F", r.F},
                         {"G", r.G},
                         {"F1l", r.F1l},
                         {"G1l", r.G1l},
                         {"F10", r.F10},
                         {"G10", r.G10},
                         {"F10_region", {{"A1", r.F10_region[0]}, {"A2", r.F10_region[1]}, {"A2c", r.F10_region[2]}}},
                         {"G10_region", {{"A1", r.G10_region[0]}, {"A2", r.G10_region[1]}, {"A2c", r.G10_region[2]}}},
                         {"F10_triple", r.F10_triple},
                         {"G10_triple", r.G10_triple},
                         {"residual_G0_plus_F0", r.residual_G0_plus_F0},
                         {"residual_G1_minus_2F1", r.residual_G1_minus_2F1},
                         {"residual_G10_minus_2F10", r.residual_G10_minus_2F10},
                         {"residual_Gk_reduced", r.residual_Gk_reduced},
                         {"residual_F1_decomposition", r.residual_F1_decomposition},
                         {"residual_G1_decomposition", r.residual_G1_decomposition},
                         {"commutator_A2c", r.commutator_A2c},
                         {"dE_dt_reconstructed", r.dE_dt_reconstructed}});
  }
  out.write_json("identities.json", json{{"n_modes", grid.n_modes}, {"draws", draws}});
}

void run_energy_report(const ExperimentConfig& cfg, ArtifactWriter& out) {
  const SpectralField u = first_eps(cfg) * experiment_profile(cfg);
  const BilinearOperator P(cfg.alpha, cfg.grid());
  const EnergyBreakdown b = modified_energy(P, u, cfg.sobolev_N);
  std::string csv = "k,quadratic,cross,E_k\n";
  for (std::size_t i = 0; i < b.k_values.size(); ++i) {
    csv += std::to_string(b.k_values[i]) + "," + num(b.quadratic_part[i]) + "," + num(b.cross_part[i]) + "," +
           num(b.quadratic_part[i] + b.cross_part[i]) + "\n";
  }
  out.write("energy.csv", csv);
  json j = breakdown_json(b);
  j["eps"] = first_eps(cfg);
  j["norm_sq_energy_index"] = std::pow(sobolev_norm(u, cfg.params().energy_index()), 2);
  out.write_json("energy.json", j);
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ArtifactWriter out(cfg.out_dir);
  json manifest;
  manifest["experiment"] = cfg.experiment;
  manifest["version"] = "0.1.0";
  manifest["inputs"] = cfg.entries();
  manifest["seeds"] = std::vector<std::uint64_t>{cfg.seed};
  int status = 0;
  try {
    if (cfg.experiment == "simulate") run_simulate(cfg, out);
    else if (cfg.experiment == "sweep-lifespan") run_sweep_lifespan(cfg, out);
    else if (cfg.experiment == "sweep-energy-rate") run_sweep_energy_rate(cfg, out);
    else if (cfg.experiment == "verify-symbol") run_verify_symbol(cfg, out);
    else if (cfg.experiment == "verify-cancellation") run_verify_cancellation(cfg, out);
    else if (cfg.experiment == "verify-identities") run_verify_identities(cfg, out);
    else if (cfg.experiment == "energy-report") run_energy_report(cfg, out);
    manifest["status"] = "ok";
  } catch (const std::exception& e) {
    manifest["status"] = "failed";
    manifest["error"] = e.what();
    std::fprintf(stderr, "error: %s\n", e.what());
    status = 1;
  }
  manifest["outputs"] = out.outputs();
  std::ofstream(out.dir() / "manifest.json", std::ios::binary) << manifest.dump(2) << "\n";
  return status;
}

int run_config(const std::string& path) { return run_experiment(load_config(path)); }

}  // namespace fbbm
