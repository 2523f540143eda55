#include "fbbm/normal_form.hpp"

#include <cmath>
#include <stdexcept>

#include "fbbm/solver.hpp"

namespace fbbm {

BilinearOperator::BilinearOperator(double alpha, const GridSpec& grid, Exec exec)
    : grid_(grid), exec_(exec), symbol_(std::make_shared<SymbolGrid>(alpha, grid, exec)) {}

void BilinearOperator::check_inputs(const SpectralField& f, const SpectralField& g) const {
  if (!(f.grid() == grid_) || !(g.grid() == grid_)) throw std::invalid_argument("P: grid mismatch");
  if (!f.is_mean_zero() || !g.is_mean_zero()) throw std::invalid_argument("P: inputs must be mean-zero");
}

SpectralField BilinearOperator::apply_undealiased(const SpectralField& f, const SpectralField& g) const {
  check_inputs(f, g);
  // the Nyquist slot is not a lattice mode of its own; P acts on |j| < n/2
  const int r = grid_.n_modes / 2 - 1;
  std::vector<cd> fs(2 * r + 1), gs(2 * r + 1), out(4 * r + 1);
  for (int j = -r; j <= r; ++j) {
    fs[j + r] = f.coeff(j);
    gs[j + r] = g.coeff(j);
  }
  kernels::bilinear_sum(fs, r, gs, r, *symbol_, out, exec_);
  SpectralField res(grid_);
  for (int j = -r; j <= r; ++j) res.coeff(j) = out[j + 2 * r];
  return res;
}

SpectralField BilinearOperator::apply(const SpectralField& f, const SpectralField& g) const {
  return dealias(apply_undealiased(f, g));
}

SpectralField BilinearOperator::transform(const SpectralField& u) const { return u + apply(u, u); }

namespace {

SpectralField resolved_advection(const SpectralField& u, double alpha) {
  // (1+|D|^al)^{-1} (u u_x), product formed exactly on the grid
  return resolvent(dealias(multiply(u, spatial_derivative(u, 1))), alpha);
}

}  // namespace

SpectralField BilinearOperator::remainder(const SpectralField& u) const {
  const SpectralField q = resolved_advection(u, alpha());
  SpectralField s = apply(q, u) + apply(u, q);
  return -1.0 * one_plus_fractional(s, alpha());
}

SpectralField BilinearOperator::remainder_symmetrized(const SpectralField& u) const {
  const SpectralField q = resolved_advection(u, alpha());
  return -2.0 * one_plus_fractional(apply(q, u), alpha());
}

BilinearOperator::Cancellation BilinearOperator::quadratic_cancellation(const SpectralField& u) const {
  if (!(u.grid() == grid_)) throw std::invalid_argument("quadratic_cancellation: grid mismatch");
  if (u.support_radius(1e-13) > grid_.n_modes / 6) {
    throw std::invalid_argument("quadratic_cancellation: u must be supported in |j| <= n/6");
  }
  const SpectralField ut = evolution_rhs(u, alpha());
  const SpectralField wt = ut + apply(ut, u) + apply(u, ut);
  const SpectralField w = transform(u);
  const SpectralField lhs = one_plus_fractional(wt, alpha()) + spatial_derivative(w, 1);
  const SpectralField res = lhs - remainder(u);
  const SpectralField quad = 0.5 * spatial_derivative(multiply(u, u), 1);
  return {sobolev_norm(res, 0.0), sobolev_norm(quad, 0.0)};
}

double quadratic_cancellation_residual(const BilinearOperator& P, const SpectralField& u) {
  return P.quadratic_cancellation(u).residual;
}

}  // namespace fbbm
