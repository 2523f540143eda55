// Quartic forms in the time derivative of the partial energies, evaluated as
// exact lattice sums.
//
// With P the normal-form bilinear operator and Lam = 1 + |D|^al:
//
//   F_0    = < d^k(u^2), P(d^{k+1} u, u) >
//   F_j    = 1/2 < d^k(u^2), P(d^{k+1-j} u, d^j u) >                   1 <= j <= k
//   G_j    = - < d^k u, Lam P(Lam^{-1} d^{k+1-j}(u^2), d^j u) >         0 <= j <= k
//   F_{1,0} = < u d^k u, P(d^k u, u_x) >
//   F_{1,l} = < d^{k-l}u d^l u, P(d^k u, u_x) >                         1 <= l <= k-1
//   G_{1,0} = -2 < d^k u, Lam P(Lam^{-1} d(u d^{k-1}u), u_x) >
//   G_{1,l} = - < d^k u, Lam P(Lam^{-1} d(d^{k-1-l}u d^l u), u_x) >     1 <= l <= k-2
//
//   1/2 dE_k/dt = F_0 + G_0 + sum_{j=1..k} [ C(k+1,j) F_j + C(k,j) G_j ]
//   F_1 = F_{1,0} + 1/2 sum_l C(k,l)   F_{1,l}
//   G_1 = G_{1,0} +     sum_l C(k-1,l) G_{1,l}                          (k >= 2)
//
// Triple-sum form with dQ = u(eta-sigma) u(xi-eta) u(sigma) conj(u(xi)):
//
//   F_{1,0} =  L sum m(xi-eta, sigma) (i sigma)^k (i(xi-eta)) conj((i xi)^k) dQ
//   G_{1,0} = -2L sum (1+|xi|^al)/(1+|eta|^al) m(xi-eta, eta)
//                     (i eta)(i sigma)^{k-1} (i(xi-eta)) conj((i xi)^k) dQ
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "fbbm/lattice.hpp"
#include "fbbm/parallel.hpp"
#include "fbbm/spectral_field.hpp"
#include "fbbm/symbol.hpp"

namespace fbbm {

/// Per-region pieces of the triple sums.  Index with static_cast<int>(Region).
struct TripleSums {
  std::array<double, 3> F10{};
  std::array<double, 3> G10{};
  /// i L sum N sigma^k (xi-eta) xi^k dQ over the positive / negative part of A2c,
  /// N = m(xi-eta, sigma) - (1+|xi|^al)/(1+|eta|^al) m(xi-eta, eta).
  cd commutator_positive{};
  cd commutator_negative{};
  /// -2i L sum (1+|xi|^al)/(1+|eta|^al) m(xi-eta,eta) (eta-sigma) sigma^{k-1} (xi-eta) xi^k dQ over A2c.
  double commutator_remainder = 0.0;
  long a2c_triples = 0;
  long a2c_not_sign_uniform = 0;

  double F10_total() const { return F10[0] + F10[1] + F10[2]; }
  double G10_total() const { return G10[0] + G10[1] + G10[2]; }
};

namespace kernels {

/// O(K^3) sum over (xi, eta, sigma) with u supported in |j| <= K; rows of xi
/// are partitioned across threads.  m must cover radius 2K.
TripleSums f10_g10_triple(const LatticeSeries& u, int k, const SymbolGrid& m, Exec exec);

}  // namespace kernels

class QuarticForms {
 public:
  /// u mean-zero with a zero Nyquist coefficient.  The symbol table covers
  /// twice the support radius of u.
  QuarticForms(const SpectralField& u, double alpha, Exec exec = default_exec());
  QuarticForms(const LatticeSeries& u, double alpha, Exec exec = default_exec());

  double alpha() const { return alpha_; }
  const LatticeSeries& field() const { return u_; }
  const SymbolGrid& symbol() const { return *m_; }

  double F(int k, int j) const;
  double G(int k, int j) const;
  double F1l(int k, int l) const;
  double G1l(int k, int l) const;
  double F10(int k) const;
  double G10(int k) const;

  /// <P(d^k u, d^2 u), d^{k-1}(u^2)>
  double G1_correction(int k) const;
  /// 2 <u d^{k-1}u, P(d^k u, u_xx)> + 2 <u_x d^{k-1}u, P(d^k u, u_x)>
  double G10_correction(int k) const;
  /// 1/2 <d^{k-1} u, Lam P(Lam^{-1} d^2(u^2), d^k u)>
  double Gk_reduced(int k) const;
  /// 2 (F_0 + G_0 + sum_j [C(k+1,j) F_j + C(k,j) G_j])
  double dEk_dt(int k) const;

  TripleSums triple(int k) const;

  /// (L sum (1+xi^2)^s |u|^2)^{1/2}
  double sobolev_norm(double s) const;

 private:
  LatticeSeries P(const LatticeSeries& f, const LatticeSeries& g) const;
  LatticeSeries d(int order) const;
  LatticeSeries square() const;

  double alpha_;
  Exec exec_;
  LatticeSeries u_;
  std::shared_ptr<const SymbolGrid> m_;
};

double binomial(int n, int r);

struct QuarticReport {
  int k = 0;
  double alpha = 0.0;
  std::vector<double> F;    ///< j = 0..k
  std::vector<double> G;    ///< j = 0..k
  std::vector<double> F1l;  ///< l = 1..k-1
  std::vector<double> G1l;  ///< l = 1..k-2
  double F10 = 0.0;
  double G10 = 0.0;
  /// Triple-sum values per region (A1, A2, A2c) and their totals.
  std::array<double, 3> F10_region{};
  std::array<double, 3> G10_region{};
  double F10_triple = 0.0;
  double G10_triple = 0.0;
  double residual_G0_plus_F0 = 0.0;      ///< |G0+F0| / max(|F0|, floor)
  double residual_G1_minus_2F1 = 0.0;    ///< |G1-2F1-corr| / scale
  double residual_G10_minus_2F10 = 0.0;  ///< |G10-2F10-corr| / scale
  double residual_Gk_reduced = 0.0;
  double residual_F1_decomposition = 0.0;
  double residual_G1_decomposition = 0.0;  ///< 0 for k = 1 (not defined)
  double commutator_A2c = 0.0;
  double dE_dt_reconstructed = 0.0;
};

/// Everything above for one k (>= 1).  The triple sums need n_modes <= 256.
QuarticReport quartic_report(const SpectralField& u, double alpha, int k, Exec exec = default_exec());

// ---- per-identity entry points --------------------------------------------

struct FjGj {
  double F = 0.0;
  double G = 0.0;
};
FjGj compute_Fj_Gj(const SpectralField& u, double alpha, int k, int j);

struct IdentityCheck {
  double lhs = 0.0;          ///< the directly computed difference
  double rhs = 0.0;          ///< its closed form (0 for G0+F0)
  double relative = 0.0;     ///< |lhs - rhs| / max(scale, floor)
  double bound_ratio = 0.0;  ///< |lhs| over the Sobolev product of the estimate
};

IdentityCheck verify_G0_equals_minus_F0(const SpectralField& u, double alpha, int k);
/// lhs = G1 - 2F1, rhs = <P(d^k u, u_xx), d^{k-1}(u^2)>,
/// bound_ratio = |lhs| / (||u||_{H^2} ||u||_{H^k}^3).
IdentityCheck verify_G1_vs_2F1(const SpectralField& u, double alpha, int k);
/// lhs = G10 - 2F10 (k >= 2), bound_ratio = |lhs| / (||u||_{H^2}^2 ||u||_{H^k}^2).
IdentityCheck verify_G10_vs_2F10(const SpectralField& u, double alpha, int k);
/// lhs = G_k, rhs = reduced form (k >= 1).
IdentityCheck compute_Gk_reduced(const SpectralField& u, double alpha, int k);

struct F10G10 {
  double F10 = 0.0;
  double G10 = 0.0;
};
/// Triple-sum evaluation, optionally restricted to one region.
F10G10 compute_F10_G10(const SpectralField& u, double alpha, int k, std::optional<Region> region = {},
                       Exec exec = default_exec());

// ---- commutator kernel ----------------------------------------------------

/// N = m(xi-eta, sigma) - (1+|xi|^al)/(1+|eta|^al) m(xi-eta, eta)
double commutator_kernel(double xi, double eta, double sigma, double alpha);
/// Ntilde = (xi-eta+sigma)(1+|sigma|^al) D(xi-eta, eta) - xi (1+|xi|^al) D(xi-eta, sigma),
/// D the denominator bracket of m.
double commutator_kernel_tilde(double xi, double eta, double sigma, double alpha);
/// N rebuilt from Ntilde:
///   2 m(a,sigma) m(a,eta) Ntilde / ((1+|a|^al)(1+|eta|^al) xi (a+sigma) (1+|sigma|^al)),  a = xi-eta
double commutator_kernel_factored(double xi, double eta, double sigma, double alpha);

struct CommutatorResult {
  double I_value = 0.0;          ///< 2 Re of the positive-part sum
  double I_direct = 0.0;         ///< positive + negative parts summed directly
  double mirror_defect = 0.0;    ///< |negative - conj(positive)|
  double split_residual = 0.0;   ///< |2F10 + G10 - (2I + remainder)| over A2c, relative
  double kernel_bound_ratio = 0.0;
};

struct KernelBoundReport {
  int accepted = 0;
  int attempts = 0;
  double max_ratio = 0.0;  ///< max |N| / (eta^al (1 + |eta-sigma|/|xi-eta|))
  double max_factorization_defect = 0.0;  ///< max |N - factored| / |N|
  double diagonal_tilde = 0.0;  ///< max |Ntilde| at xi = eta = sigma
  double diagonal_N = 0.0;      ///< max |N| at xi = eta = sigma (line convention)
};

/// Samples positive-part A2c triples: eta log-uniform in [1, eta_max],
/// |mu|, |nu| <= 1/10, rejection through classify_region.
KernelBoundReport sample_kernel_bound(double alpha, int n_samples, std::uint64_t seed, double eta_max = 1e4);

CommutatorResult commutator_A2c(const SpectralField& u, double alpha, int k, int kernel_samples = 10000,
                                std::uint64_t seed = 1, Exec exec = default_exec());

// ---- energy-derivative reconstruction -------------------------------------

struct DerivativeCheck {
  double dt = 0.0;
  double finite_difference = 0.0;  ///< (E_k(u(dt)) - E_k(u(-dt))) / (2 dt)
  double reconstructed = 0.0;      ///< quartic sum at u0
  double mismatch = 0.0;           ///< |difference|
};

/// One RK4 step of size dt forward and one backward (dealiased flow), and the
/// centred comparison.
DerivativeCheck verify_dEk_dt(const SpectralField& u0, double alpha, int k, double dt);

}  // namespace fbbm
