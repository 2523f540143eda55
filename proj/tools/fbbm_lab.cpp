// Command-line front end for the fractional BBM laboratory.
//
//   fbbm_lab [--config FILE] [--seed S] [--out-dir DIR] [--threads T] <subcommand> [options]
//
// Settings are layered: built-in defaults, then the config file, then flags.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fbbm/lab.hpp"
#include "fbbm/parallel.hpp"

namespace {

struct Overrides {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  int threads = 0;

  std::optional<double> alpha;
  std::optional<int> n_modes;
  std::optional<double> domain_length;
  std::optional<int> N;
  std::optional<int> k;
  std::vector<double> eps;
  std::optional<std::string> profile;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::optional<int> record_stride;
  std::optional<double> growth_factor;
  std::optional<double> cap_multiplier;
  std::optional<int> samples;
  std::optional<double> window;
  std::optional<int> snapshots;
  std::optional<int> draws;
};

void add_experiment_options(CLI::App* sub, Overrides& o) {
  sub->add_option("--alpha", o.alpha, "fractional order in (0,1)");
  sub->add_option("--n", o.n_modes, "grid points (even, >= 8)");
  sub->add_option("--length", o.domain_length, "domain length L");
  sub->add_option("--N", o.N, "Sobolev index N >= 2");
  sub->add_option("--k", o.k, "partial-energy index");
  sub->add_option("--eps", o.eps, "amplitudes")->delimiter(',');
  sub->add_option("--profile", o.profile, "default | two-mode | random");
  sub->add_option("--dt", o.dt, "time step");
  sub->add_option("--t-end", o.t_end, "final time");
  sub->add_option("--record-stride", o.record_stride, "steps between records");
  sub->add_option("--growth", o.growth_factor, "lifespan growth factor");
  sub->add_option("--cap", o.cap_multiplier, "lifespan cap multiplier (cap = C/eps^2)");
  sub->add_option("--samples", o.samples, "sample count");
  sub->add_option("--window", o.window, "rate window [0, window]");
  sub->add_option("--snapshots", o.snapshots, "snapshots per rate run");
  sub->add_option("--draws", o.draws, "random draws");
}

template <class T>
void take(const std::optional<T>& v, T& dst) {
  if (v) dst = *v;
}

fbbm::ExperimentConfig build_config(const Overrides& o, const std::string& experiment) {
  fbbm::ExperimentConfig c;
  if (o.config) c = fbbm::load_config(*o.config);
  if (!experiment.empty()) c.experiment = experiment;
  take(o.seed, c.seed);
  take(o.out_dir, c.out_dir);
  take(o.alpha, c.alpha);
  take(o.n_modes, c.n_modes);
  take(o.domain_length, c.domain_length);
  take(o.N, c.sobolev_N);
  take(o.k, c.k);
  if (!o.eps.empty()) c.eps = o.eps;
  take(o.profile, c.profile);
  take(o.dt, c.dt);
  take(o.t_end, c.t_end);
  take(o.record_stride, c.record_stride);
  take(o.growth_factor, c.growth_factor);
  take(o.cap_multiplier, c.cap_multiplier);
  take(o.samples, c.samples);
  take(o.window, c.window);
  take(o.snapshots, c.snapshots);
  take(o.draws, c.draws);
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractional BBM normal-form and modified-energy laboratory"};
  Overrides o;
  app.add_option("--config", o.config, "key = value experiment file");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--out-dir", o.out_dir, "artifact directory");
  app.add_option("--threads", o.threads, "OpenMP threads (0 = runtime default)");

  const std::vector<std::pair<std::string, std::string>> subs{
      {"simulate", "integrate eps*profile and write trajectory.csv"},
      {"sweep-lifespan", "lifespan probes over eps"},
      {"sweep-energy-rate", "modified and standard energy rates over eps"},
      {"verify-symbol", "growth envelope constants of m"},
      {"verify-cancellation", "quadratic cancellation residuals"},
      {"verify-identities", "quartic-form identities on random draws"},
      {"energy-report", "per-k modified-energy breakdown"},
  };
  for (const auto& [name, help] : subs) add_experiment_options(app.add_subcommand(name, help), o);
  app.require_subcommand(0, 1);

  CLI11_PARSE(app, argc, argv);
  fbbm::set_thread_count(o.threads);

  std::string experiment;
  for (CLI::App* s : app.get_subcommands()) experiment = s->get_name();
  if (experiment.empty() && !o.config) {
    std::fputs(app.help().c_str(), stderr);
    return 2;
  }
  try {
    return fbbm::run_experiment(build_config(o, experiment));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
