#include "fbbm/solver.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace fbbm {

SpectralField evolution_rhs(const SpectralField& u, double alpha, bool dealias_product) {
  SpectralField sq = multiply(u, u);
  if (dealias_product) sq = dealias(sq);
  SpectralField flux = u;
  flux.axpy(0.5, sq);
  return -1.0 * resolvent(spatial_derivative(flux, 1), alpha);
}

SpectralField rk4_step(const SpectralField& u, double dt, double alpha, bool dealias_product) {
  const SpectralField k1 = evolution_rhs(u, alpha, dealias_product);
  SpectralField s = u;
  s.axpy(0.5 * dt, k1);
  const SpectralField k2 = evolution_rhs(s, alpha, dealias_product);
  s = u;
  s.axpy(0.5 * dt, k2);
  const SpectralField k3 = evolution_rhs(s, alpha, dealias_product);
  s = u;
  s.axpy(dt, k3);
  const SpectralField k4 = evolution_rhs(s, alpha, dealias_product);
  SpectralField out = u;
  out.axpy(dt / 6.0, k1);
  out.axpy(dt / 3.0, k2);
  out.axpy(dt / 3.0, k3);
  out.axpy(dt / 6.0, k4);
  return out;
}

double max_linear_frequency(const GridSpec& grid, double alpha) {
  double w = 0.0;
  for (int j = 1; j <= grid.max_index(); ++j) {
    const double xi = grid.frequency(j);
    w = std::max(w, xi / (1.0 + std::pow(xi, alpha)));
  }
  return w;
}

double stability_limit(const GridSpec& grid, double alpha) { return 2.5 / max_linear_frequency(grid, alpha); }

void SolverConfig::validate(const GridSpec& grid, double alpha) const {
  if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be positive");
  if (!(t_end > 0.0)) throw std::invalid_argument("SolverConfig: t_end must be positive");
  if (record_stride < 1) throw std::invalid_argument("SolverConfig: record_stride must be >= 1");
  if (!(drift_abort_threshold > 0.0)) throw std::invalid_argument("SolverConfig: drift threshold must be positive");
  const double lim = stability_limit(grid, alpha);
  if (dt > lim) {
    throw std::invalid_argument("SolverConfig: dt " + std::to_string(dt) + " above stability limit " +
                                std::to_string(lim));
  }
}

ResolutionLoss::ResolutionLoss(double t)
    : Error("resolution-loss: non-finite state after t = " + std::to_string(t)), last_valid_time(t) {}

DriftAbort::DriftAbort(double t, double d)
    : Error("drift abort at t = " + std::to_string(t) + ": relative drift " + std::to_string(d)),
      time(t),
      drift(d) {}

namespace {

bool finite_field(const SpectralField& u) {
  for (const cd& c : u.coeffs()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

void require_initial_state(const SpectralField& u0) {
  if (!u0.is_mean_zero()) throw std::invalid_argument("initial data must be mean-zero");
  if (!finite_field(u0)) throw std::invalid_argument("initial data must be finite");
}

}  // namespace

TrajectoryRecord integrate(const SpectralField& u0, const SolverConfig& cfg, const FracParams& params,
                           const BilinearOperator* energy_op) {
  TrajectoryRecord rec;
  integrate_into(rec, u0, cfg, params, energy_op);
  return rec;
}

void integrate_into(TrajectoryRecord& rec, const SpectralField& u0, const SolverConfig& cfg,
                    const FracParams& params, const BilinearOperator* energy_op) {
  params.validate();
  cfg.validate(u0.grid(), params.alpha);
  require_initial_state(u0);
  const double alpha = params.alpha;
  std::optional<BilinearOperator> own;
  if (!energy_op) energy_op = &own.emplace(alpha, u0.grid());

  rec = TrajectoryRecord{};
  rec.sobolev_indices = {0.0, 2.0 + 0.5 * alpha, params.energy_index()};
  auto record = [&](double t, const SpectralField& u, double conserved) {
    rec.times.push_back(t);
    std::array<double, 3> norms{};
    for (int i = 0; i < 3; ++i) norms[i] = sobolev_norm(u, rec.sobolev_indices[i]);
    rec.sobolev_norms.push_back(norms);
    rec.conserved_values.push_back(conserved);
    rec.energy_breakdowns.push_back(modified_energy(*energy_op, u, params.sobolev_N));
  };

  const long steps = static_cast<long>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
  const double h = cfg.t_end / static_cast<double>(steps);
  SpectralField& u = rec.final_state;
  u = u0;
  const double c0 = conserved_functional(u, alpha);
  record(0.0, u, c0);
  for (long s = 1; s <= steps; ++s) {
    SpectralField next = rk4_step(u, h, alpha, cfg.dealias);
    const double t = h * static_cast<double>(s);
    if (!finite_field(next)) throw ResolutionLoss(h * static_cast<double>(s - 1));
    u = std::move(next);
    const double c = conserved_functional(u, alpha);
    if (c0 > 0.0) {
      const double drift = std::abs(c - c0) / c0;
      if (drift > cfg.drift_abort_threshold) throw DriftAbort(t, drift);
    }
    if (s % cfg.record_stride == 0 || s == steps) record(t, u, c);
  }
}

const char* probe_status_name(ProbeStatus s) {
  switch (s) {
    case ProbeStatus::crossed: return "crossed";
    case ProbeStatus::capped: return "capped";
    case ProbeStatus::resolution_loss: return "resolution-loss";
  }
  return "?";
}

ProbeResult lifespan_probe(const SpectralField& profile, double eps, const FracParams& params,
                           const LifespanOptions& opt) {
  params.validate();
  if (!(opt.growth_factor >= 1.0)) throw std::invalid_argument("lifespan_probe: growth_factor must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("lifespan_probe: eps must be positive");
  if (!(opt.cap_multiplier > 0.0)) throw std::invalid_argument("lifespan_probe: cap_multiplier must be positive");
  const double alpha = params.alpha;
  const double s = params.energy_index();
  SolverConfig cfg;
  cfg.dt = opt.dt;
  cfg.t_end = 1.0;
  cfg.validate(profile.grid(), alpha);

  SpectralField u = eps * profile;
  require_initial_state(u);
  ProbeResult res;
  res.eps = eps;
  res.cap = opt.cap_multiplier / (eps * eps);
  res.initial_norm = sobolev_norm(u, s);
  if (res.initial_norm == 0.0) throw std::invalid_argument("lifespan_probe: zero profile");
  const double threshold = opt.growth_factor * res.initial_norm;
  if (res.initial_norm >= threshold) {
    res.time = 0.0;
    res.status = ProbeStatus::crossed;
    return res;
  }
  const double c0 = conserved_functional(u, alpha);
  const long steps = static_cast<long>(std::ceil(res.cap / opt.dt - 1e-9));
  const double h = res.cap / static_cast<double>(steps);
  for (long k = 1; k <= steps; ++k) {
    SpectralField next = rk4_step(u, h, alpha);
    const double t = h * static_cast<double>(k);
    const double norm = sobolev_norm(next, s);
    const double drift = std::abs(conserved_functional(next, alpha) - c0) / c0;
    if (!finite_field(next) || !std::isfinite(norm) || drift > opt.drift_abort_threshold) {
      res.time = h * static_cast<double>(k - 1);
      res.status = ProbeStatus::resolution_loss;
      return res;
    }
    u = std::move(next);
    res.max_norm_ratio = std::max(res.max_norm_ratio, norm / res.initial_norm);
    if (norm >= threshold) {
      res.time = t;
      res.status = ProbeStatus::crossed;
      return res;
    }
  }
  res.time = res.cap;
  res.status = ProbeStatus::capped;
  return res;
}

}  // namespace fbbm
