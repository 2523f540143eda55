#include "fbbm/quartic_forms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fbbm/normal_form.hpp"
#include "fbbm/energy.hpp"
#include "fbbm/rng.hpp"
#include "fbbm/solver.hpp"

namespace fbbm {

namespace {

constexpr double kFloor = 1e-300;

cd ipow(double xi, int order) {
  const cd ik(0.0, xi);
  cd r = 1.0;
  for (int p = 0; p < order; ++p) r *= ik;
  return r;
}

double rel(double diff, double scale) { return std::abs(diff) / std::max(scale, kFloor); }

void require_k(int k, int min_k, const char* what) {
  if (k < min_k) throw std::invalid_argument(std::string(what) + ": k must be >= " + std::to_string(min_k));
}

LatticeSeries checked_series(const SpectralField& u) {
  if (!u.is_mean_zero()) throw std::invalid_argument("quartic forms: u must be mean-zero");
  return LatticeSeries::from_field(u);
}

}  // namespace

double binomial(int n, int r) {
  if (r < 0 || r > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return std::round(c);
}

// ---- triple sums ------------------------------------------------------------

namespace kernels {

TripleSums f10_g10_triple(const LatticeSeries& u, int k, const SymbolGrid& m, Exec exec) {
  require_k(k, 1, "f10_g10_triple");
  const int K = u.radius();
  if (K > 0 && m.radius() < 2 * K) throw std::invalid_argument("f10_g10_triple: symbol grid must cover 2K");
  const double alpha = m.alpha();
  const double L = u.domain_length();
  const int R = 2 * K;
  // per-index tables over [-2K, 2K]
  std::vector<double> freq(2 * R + 1), wpow(2 * R + 1);
  std::vector<cd> dk(2 * R + 1), dkm1(2 * R + 1);
  for (int j = -R; j <= R; ++j) {
    const double x = u.frequency(j);
    freq[j + R] = x;
    wpow[j + R] = 1.0 + std::pow(std::abs(x), alpha);
    dk[j + R] = ipow(x, k);
    dkm1[j + R] = ipow(x, k - 1);
  }
  const cd I(0.0, 1.0);

  std::vector<TripleSums> rows(2 * K + 1);
  for_each_row(-K, K, exec, [&](int x) {
    TripleSums& acc = rows[x + K];
    const cd ux = u.at(x);
    if (ux == cd{}) return;
    const double xi = freq[x + R];
    const cd outer = std::conj(dk[x + R] * ux);
    std::array<cd, 3> f{}, g{};
    cd cpos{}, cneg{}, crem{};
    for (int s = -K; s <= K; ++s) {
      const cd us = u.at(s);
      if (us == cd{}) continue;
      const double sigma = freq[s + R];
      const int lo = std::max(x, s) - K;
      const int hi = std::min(x, s) + K;
      for (int e = lo; e <= hi; ++e) {
        const int a = x - e;
        const cd dq = u.at(e - s) * u.at(a) * us * outer;
        if (dq == cd{}) continue;
        const double eta = freq[e + R];
        const double fa = freq[a + R];
        const RegionLabel lab = classify_region(xi, eta, sigma);
        const int r = static_cast<int>(lab.region);
        const double m_as = m.at(a, s);
        const double m_ae = m.at(a, e);
        const double ratio = wpow[x + R] / wpow[e + R];
        f[r] += m_as * dk[s + R] * (I * fa) * dq;
        g[r] += -2.0 * ratio * m_ae * (I * eta) * dkm1[s + R] * (I * fa) * dq;
        if (lab.region == Region::A2c) {
          ++acc.a2c_triples;
          if (!lab.sign_uniform) ++acc.a2c_not_sign_uniform;
          // (i eta)(i sigma)^{k-1} = (i sigma)^k + i(eta-sigma)(i sigma)^{k-1}
          const cd term = (m_as - ratio * m_ae) * dk[s + R] * (I * fa) * dq;
          (lab.positive_part ? cpos : cneg) += term;
          crem += -2.0 * ratio * m_ae * (I * (eta - sigma)) * dkm1[s + R] * (I * fa) * dq;
        }
      }
    }
    for (int r = 0; r < 3; ++r) {
      acc.F10[r] = L * f[r].real();
      acc.G10[r] = L * g[r].real();
    }
    acc.commutator_positive = L * cpos;
    acc.commutator_negative = L * cneg;
    acc.commutator_remainder = L * crem.real();
  });

  TripleSums out;
  for (const TripleSums& r : rows) {
    for (int i = 0; i < 3; ++i) {
      out.F10[i] += r.F10[i];
      out.G10[i] += r.G10[i];
    }
    out.commutator_positive += r.commutator_positive;
    out.commutator_negative += r.commutator_negative;
    out.commutator_remainder += r.commutator_remainder;
    out.a2c_triples += r.a2c_triples;
    out.a2c_not_sign_uniform += r.a2c_not_sign_uniform;
  }
  return out;
}

}  // namespace kernels

// ---- inner-product forms ------------------------------------------------------

QuarticForms::QuarticForms(const SpectralField& u, double alpha, Exec exec)
    : QuarticForms(checked_series(u), alpha, exec) {}

QuarticForms::QuarticForms(const LatticeSeries& u, double alpha, Exec exec)
    : alpha_(alpha),
      exec_(exec),
      u_(u),
      m_(std::make_shared<SymbolGrid>(alpha, u.dk(), std::max(1, 2 * u.radius()), exec)) {
  require_alpha(alpha);
  if (u_.at(0) != cd{}) throw std::invalid_argument("quartic forms: u must be mean-zero");
}

LatticeSeries QuarticForms::P(const LatticeSeries& f, const LatticeSeries& g) const {
  return bilinear(f, g, *m_, exec_);
}

LatticeSeries QuarticForms::d(int order) const { return derivative(u_, order); }

LatticeSeries QuarticForms::square() const { return product(u_, u_); }

double QuarticForms::F(int k, int j) const {
  require_k(k, 1, "F");
  if (j < 0 || j > k) throw std::invalid_argument("F: j out of range");
  const LatticeSeries dk_sq = derivative(square(), k);
  const double v = inner(dk_sq, P(d(k + 1 - j), d(j))).real();
  return j == 0 ? v : 0.5 * v;
}

double QuarticForms::G(int k, int j) const {
  require_k(k, 1, "G");
  if (j < 0 || j > k) throw std::invalid_argument("G: j out of range");
  const LatticeSeries q = resolvent(derivative(square(), k + 1 - j), alpha_);
  return -inner(d(k), one_plus_fractional(P(q, d(j)), alpha_)).real();
}

double QuarticForms::F1l(int k, int l) const {
  if (l < 1 || l > k - 1) throw std::invalid_argument("F1l: l out of range");
  return inner(product(d(k - l), d(l)), P(d(k), d(1))).real();
}

double QuarticForms::G1l(int k, int l) const {
  if (l < 1 || l > k - 2) throw std::invalid_argument("G1l: l out of range");
  const LatticeSeries q = resolvent(derivative(product(d(k - 1 - l), d(l)), 1), alpha_);
  return -inner(d(k), one_plus_fractional(P(q, d(1)), alpha_)).real();
}

double QuarticForms::F10(int k) const {
  require_k(k, 1, "F10");
  return inner(product(u_, d(k)), P(d(k), d(1))).real();
}

double QuarticForms::G10(int k) const {
  require_k(k, 1, "G10");
  const LatticeSeries q = resolvent(derivative(product(u_, d(k - 1)), 1), alpha_);
  return -2.0 * inner(d(k), one_plus_fractional(P(q, d(1)), alpha_)).real();
}

double QuarticForms::G1_correction(int k) const {
  require_k(k, 1, "G1_correction");
  return inner(P(d(k), d(2)), derivative(square(), k - 1)).real();
}

double QuarticForms::G10_correction(int k) const {
  require_k(k, 1, "G10_correction");
  const double a = inner(product(u_, d(k - 1)), P(d(k), d(2))).real();
  const double b = inner(product(d(1), d(k - 1)), P(d(k), d(1))).real();
  return 2.0 * a + 2.0 * b;
}

double QuarticForms::Gk_reduced(int k) const {
  require_k(k, 1, "Gk_reduced");
  const LatticeSeries q = resolvent(derivative(square(), 2), alpha_);
  return 0.5 * inner(d(k - 1), one_plus_fractional(P(q, d(k)), alpha_)).real();
}

double QuarticForms::dEk_dt(int k) const {
  require_k(k, 1, "dEk_dt");
  double half = F(k, 0) + G(k, 0);
  for (int j = 1; j <= k; ++j) half += binomial(k + 1, j) * F(k, j) + binomial(k, j) * G(k, j);
  return 2.0 * half;
}

TripleSums QuarticForms::triple(int k) const { return kernels::f10_g10_triple(u_, k, *m_, exec_); }

double QuarticForms::sobolev_norm(double s) const {
  double acc = 0.0;
  for (int j = -u_.radius(); j <= u_.radius(); ++j) {
    const double x = u_.frequency(j);
    acc += std::pow(1.0 + x * x, s) * std::norm(u_.at(j));
  }
  return std::sqrt(u_.domain_length() * acc);
}

// ---- report ---------------------------------------------------------------------

namespace {

void guard_triple_size(const SpectralField& u) {
  if (u.grid().n_modes > 256) throw std::invalid_argument("triple sums: n_modes must be <= 256");
}

}  // namespace

QuarticReport quartic_report(const SpectralField& u, double alpha, int k, Exec exec) {
  require_k(k, 1, "quartic_report");
  guard_triple_size(u);
  const QuarticForms q(u, alpha, exec);
  QuarticReport r;
  r.k = k;
  r.alpha = alpha;
  for (int j = 0; j <= k; ++j) {
    r.F.push_back(q.F(k, j));
    r.G.push_back(q.G(k, j));
  }
  for (int l = 1; l <= k - 1; ++l) r.F1l.push_back(q.F1l(k, l));
  for (int l = 1; l <= k - 2; ++l) r.G1l.push_back(q.G1l(k, l));
  r.F10 = q.F10(k);
  r.G10 = q.G10(k);
  const TripleSums t = q.triple(k);
  r.F10_region = t.F10;
  r.G10_region = t.G10;
  r.F10_triple = t.F10_total();
  r.G10_triple = t.G10_total();

  r.residual_G0_plus_F0 = rel(r.G[0] + r.F[0], std::max(std::abs(r.F[0]), std::abs(r.G[0])));
  {
    const double lhs = r.G[1] - 2.0 * r.F[1];
    const double c = q.G1_correction(k);
    r.residual_G1_minus_2F1 = rel(lhs - c, std::max({std::abs(r.G[1]), std::abs(2.0 * r.F[1]), std::abs(c)}));
  }
  {
    const double lhs = r.G10 - 2.0 * r.F10;
    const double c = q.G10_correction(k);
    r.residual_G10_minus_2F10 = rel(lhs - c, std::max({std::abs(r.G10), std::abs(2.0 * r.F10), std::abs(c)}));
  }
  {
    const double red = q.Gk_reduced(k);
    r.residual_Gk_reduced = rel(r.G[k] - red, std::max(std::abs(r.G[k]), std::abs(red)));
  }
  {
    double s = r.F10;
    for (int l = 1; l <= k - 1; ++l) s += 0.5 * binomial(k, l) * r.F1l[l - 1];
    r.residual_F1_decomposition = rel(r.F[1] - s, std::abs(r.F[1]));
  }
  if (k >= 2) {
    double s = r.G10;
    for (int l = 1; l <= k - 2; ++l) s += binomial(k - 1, l) * r.G1l[l - 1];
    r.residual_G1_decomposition = rel(r.G[1] - s, std::abs(r.G[1]));
  }
  r.commutator_A2c = 2.0 * t.commutator_positive.real();
  double half = r.F[0] + r.G[0];
  for (int j = 1; j <= k; ++j) half += binomial(k + 1, j) * r.F[j] + binomial(k, j) * r.G[j];
  r.dE_dt_reconstructed = 2.0 * half;
  return r;
}

FjGj compute_Fj_Gj(const SpectralField& u, double alpha, int k, int j) {
  const QuarticForms q(u, alpha);
  return {q.F(k, j), q.G(k, j)};
}

IdentityCheck verify_G0_equals_minus_F0(const SpectralField& u, double alpha, int k) {
  const QuarticForms q(u, alpha);
  const double f = q.F(k, 0), g = q.G(k, 0);
  IdentityCheck c;
  c.lhs = g + f;
  c.rhs = 0.0;
  c.relative = rel(c.lhs, std::max(std::abs(f), std::abs(g)));
  return c;
}

IdentityCheck verify_G1_vs_2F1(const SpectralField& u, double alpha, int k) {
  const QuarticForms q(u, alpha);
  const double f = q.F(k, 1), g = q.G(k, 1);
  IdentityCheck c;
  c.lhs = g - 2.0 * f;
  c.rhs = q.G1_correction(k);
  c.relative = rel(c.lhs - c.rhs, std::max({std::abs(g), std::abs(2.0 * f), std::abs(c.rhs)}));
  const double hk = q.sobolev_norm(k);
  c.bound_ratio = std::abs(c.lhs) / std::max(q.sobolev_norm(2.0) * hk * hk * hk, kFloor);
  return c;
}

IdentityCheck verify_G10_vs_2F10(const SpectralField& u, double alpha, int k) {
  require_k(k, 2, "verify_G10_vs_2F10");
  const QuarticForms q(u, alpha);
  const double f = q.F10(k), g = q.G10(k);
  IdentityCheck c;
  c.lhs = g - 2.0 * f;
  c.rhs = q.G10_correction(k);
  c.relative = rel(c.lhs - c.rhs, std::max({std::abs(g), std::abs(2.0 * f), std::abs(c.rhs)}));
  const double h2 = q.sobolev_norm(2.0), hk = q.sobolev_norm(k);
  c.bound_ratio = std::abs(c.lhs) / std::max(h2 * h2 * hk * hk, kFloor);
  return c;
}

IdentityCheck compute_Gk_reduced(const SpectralField& u, double alpha, int k) {
  const QuarticForms q(u, alpha);
  IdentityCheck c;
  c.lhs = q.G(k, k);
  c.rhs = q.Gk_reduced(k);
  c.relative = rel(c.lhs - c.rhs, std::max(std::abs(c.lhs), std::abs(c.rhs)));
  return c;
}

F10G10 compute_F10_G10(const SpectralField& u, double alpha, int k, std::optional<Region> region, Exec exec) {
  guard_triple_size(u);
  const QuarticForms q(u, alpha, exec);
  const TripleSums t = q.triple(k);
  if (!region) return {t.F10_total(), t.G10_total()};
  const int i = static_cast<int>(*region);
  return {t.F10[i], t.G10[i]};
}

// ---- commutator kernel ----------------------------------------------------------

double commutator_kernel(double xi, double eta, double sigma, double alpha) {
  const double a = xi - eta;
  const double ratio = (1.0 + std::pow(std::abs(xi), alpha)) / (1.0 + std::pow(std::abs(eta), alpha));
  return eval_m(a, sigma, alpha) - ratio * eval_m(a, eta, alpha);
}

double commutator_kernel_tilde(double xi, double eta, double sigma, double alpha) {
  const double a = xi - eta;
  const double s1 = a + sigma;
  const double S = std::pow(std::abs(sigma), alpha);
  const double X = std::pow(std::abs(xi), alpha);
  return s1 * (1.0 + S) * m_denominator(a, eta, alpha) - xi * (1.0 + X) * m_denominator(a, sigma, alpha);
}

double commutator_kernel_factored(double xi, double eta, double sigma, double alpha) {
  const double a = xi - eta;
  const double s1 = a + sigma;
  const double A = std::pow(std::abs(a), alpha);
  const double H = std::pow(std::abs(eta), alpha);
  const double S = std::pow(std::abs(sigma), alpha);
  const double m1 = eval_m(a, sigma, alpha);
  const double m2 = eval_m(a, eta, alpha);
  const double den = (1.0 + A) * (1.0 + H) * xi * s1 * (1.0 + S);
  if (den == 0.0) return 0.0;
  return 2.0 * m1 * m2 * commutator_kernel_tilde(xi, eta, sigma, alpha) / den;
}

KernelBoundReport sample_kernel_bound(double alpha, int n_samples, std::uint64_t seed, double eta_max) {
  require_alpha(alpha);
  if (n_samples < 1) throw std::invalid_argument("sample_kernel_bound: n_samples must be >= 1");
  if (!(eta_max > 1.0)) throw std::invalid_argument("sample_kernel_bound: eta_max must exceed 1");
  Rng rng(seed);
  KernelBoundReport rep;
  const double log_max = std::log(eta_max);
  const int max_attempts = 100 * n_samples;
  while (rep.accepted < n_samples && rep.attempts < max_attempts) {
    ++rep.attempts;
    const double eta = std::exp(rng.uniform(0.0, log_max));
    const double mu = rng.uniform(-0.1, 0.1);
    const double nu = rng.uniform(-0.1, 0.1);
    const double xi = (1.0 + mu) * eta;
    const double sigma = (1.0 + nu) * eta;
    const RegionLabel lab = classify_region(xi, eta, sigma);
    if (lab.region != Region::A2c || !lab.positive_part || xi == eta) continue;
    ++rep.accepted;
    const double n = commutator_kernel(xi, eta, sigma, alpha);
    const double bound = std::pow(eta, alpha) * (1.0 + std::abs(eta - sigma) / std::abs(xi - eta));
    rep.max_ratio = std::max(rep.max_ratio, std::abs(n) / bound);
    if (n != 0.0) {
      const double nf = commutator_kernel_factored(xi, eta, sigma, alpha);
      rep.max_factorization_defect = std::max(rep.max_factorization_defect, std::abs(n - nf) / std::abs(n));
    }
  }
  for (double eta : {1.0, 2.5, 10.0, 37.0, 100.0, 1e3, 1e4}) {
    rep.diagonal_tilde = std::max(rep.diagonal_tilde, std::abs(commutator_kernel_tilde(eta, eta, eta, alpha)));
    rep.diagonal_N = std::max(rep.diagonal_N, std::abs(commutator_kernel(eta, eta, eta, alpha)));
  }
  return rep;
}

CommutatorResult commutator_A2c(const SpectralField& u, double alpha, int k, int kernel_samples,
                                std::uint64_t seed, Exec exec) {
  require_k(k, 2, "commutator_A2c");
  guard_triple_size(u);
  const QuarticForms q(u, alpha, exec);
  const TripleSums t = q.triple(k);
  CommutatorResult c;
  c.I_value = 2.0 * t.commutator_positive.real();
  c.I_direct = (t.commutator_positive + t.commutator_negative).real();
  c.mirror_defect = std::abs(t.commutator_negative - std::conj(t.commutator_positive));
  const int a2c = static_cast<int>(Region::A2c);
  const double lhs = 2.0 * t.F10[a2c] + t.G10[a2c];
  const double rhs = 2.0 * c.I_direct + t.commutator_remainder;
  // the two halves are often nearly opposite, so scale by their size
  c.split_residual = rel(lhs - rhs, std::max({std::abs(lhs), 2.0 * std::abs(t.commutator_positive),
                                              2.0 * std::abs(t.commutator_negative),
                                              std::abs(t.commutator_remainder)}));
  if (kernel_samples > 0) c.kernel_bound_ratio = sample_kernel_bound(alpha, kernel_samples, seed).max_ratio;
  return c;
}

DerivativeCheck verify_dEk_dt(const SpectralField& u0, double alpha, int k, double dt) {
  require_k(k, 1, "verify_dEk_dt");
  if (!(dt > 0.0)) throw std::invalid_argument("verify_dEk_dt: dt must be positive");
  const BilinearOperator P(alpha, u0.grid());
  // one step each way: the even-in-dt part of the RK4 energy error cancels
  const SpectralField fwd = rk4_step(u0, dt, alpha);
  const SpectralField bwd = rk4_step(u0, -dt, alpha);
  DerivativeCheck c;
  c.dt = dt;
  c.finite_difference = (partial_energy(P, fwd, k).value() - partial_energy(P, bwd, k).value()) / (2.0 * dt);
  c.reconstructed = QuarticForms(u0, alpha).dEk_dt(k);
  c.mismatch = std::abs(c.finite_difference - c.reconstructed);
  return c;
}

}  // namespace fbbm
