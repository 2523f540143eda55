// Normal-form transformation w = u + P(u,u) and its cubic remainder.
#pragma once

#include <memory>

#include "fbbm/lattice.hpp"
#include "fbbm/spectral_field.hpp"
#include "fbbm/symbol.hpp"

namespace fbbm {

/// The bilinear multiplier P(f, g) with symbol m on a fixed grid.
///
///   P(f,g)^(xi) = sum_eta m(xi - eta, eta) f^(xi - eta) g^(eta)
///
/// Dense O(n^2) sum (m(xi-eta, eta) is not a function of xi-eta alone), rows
/// partitioned across threads.  Output is dealiased.
class BilinearOperator {
 public:
  BilinearOperator(double alpha, const GridSpec& grid, Exec exec = default_exec());

  double alpha() const { return symbol_->alpha(); }
  const GridSpec& grid() const { return grid_; }
  const SymbolGrid& symbol() const { return *symbol_; }

  /// Throws std::invalid_argument on grid mismatch or non-mean-zero input.
  SpectralField apply(const SpectralField& f, const SpectralField& g) const;
  /// Same sum without the final dealiasing (still truncated to the grid).
  SpectralField apply_undealiased(const SpectralField& f, const SpectralField& g) const;

  /// w = u + P(u, u).
  SpectralField transform(const SpectralField& u) const;

  /// R(u) = -(1+|D|^al) [ P((1+|D|^al)^{-1}(u u_x), u) + P(u, (1+|D|^al)^{-1}(u u_x)) ].
  SpectralField remainder(const SpectralField& u) const;
  /// R(u) = -2 (1+|D|^al) P((1+|D|^al)^{-1}(u u_x), u), using the symmetry of P.
  SpectralField remainder_symmetrized(const SpectralField& u) const;

  struct Cancellation {
    double residual = 0.0;  ///< L^2 norm of w_t + w_x + |D|^al w_t - R(u)
    double scale = 0.0;     ///< L^2 norm of the cancelled quadratic term (u^2/2)_x
    double relative() const { return scale > 0.0 ? residual / scale : residual; }
  };

  /// Substitutes u_t from the evolution law and evaluates the w-equation
  /// residual spectrally.  u must be mean-zero with support in |j| <= n/6 so
  /// the quadratic products are exact on the grid.
  Cancellation quadratic_cancellation(const SpectralField& u) const;

 private:
  void check_inputs(const SpectralField& f, const SpectralField& g) const;

  GridSpec grid_;
  Exec exec_;
  std::shared_ptr<const SymbolGrid> symbol_;
};

double quadratic_cancellation_residual(const BilinearOperator& P, const SpectralField& u);

}  // namespace fbbm
