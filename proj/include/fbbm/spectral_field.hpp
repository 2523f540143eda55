// Fourier-coefficient representation of a real periodic field, plus the
// diagonal Fourier multipliers used throughout the library.
//
// Coefficient convention (unitary mean):
//   u(x) = sum_j c_j exp(i xi_j x),   c_j = (1/n) sum_m u(x_m) exp(-i xi_j x_m)
// so a constant 1 has c_0 = 1 and cos(2 pi x / L) has c_{+-1} = 1/2.
// With this convention a product is the plain lattice convolution
// (fg)^_j = sum_{a+b=j} f_a g_b, and the inner product is
// <f,g> = int_0^L f conj(g) dx = L sum_j f_j conj(g_j).
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fbbm/grid.hpp"

namespace fbbm {

using cd = std::complex<double>;

class SpectralField {
 public:
  SpectralField() = default;
  /// Zero field on the given grid.
  explicit SpectralField(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  int size() const { return static_cast<int>(coeffs_.size()); }

  /// Coefficient at lattice index j in [-n/2+1, n/2].
  cd coeff(int j) const { return coeffs_[slot(j)]; }
  cd& coeff(int j) { return coeffs_[slot(j)]; }
  /// Zero outside the stored index range.
  cd coeff_or_zero(int j) const;

  std::span<const cd> coeffs() const { return coeffs_; }
  std::span<cd> coeffs() { return coeffs_; }

  /// Sets c_j and c_{-j} = conj(c_j) (j = 0 and j = n/2 store the real part).
  void set_mode(int j, cd value);

  /// Largest |j| with a coefficient above rel_tol * max|c|; 0 for the zero field.
  int support_radius(double rel_tol = 0.0) const;
  double max_abs() const;
  bool is_mean_zero(double rel_tol = 1e-12) const;
  /// max_j |c(-j) - conj(c(j))| including the imaginary parts of c_0, c_{n/2}.
  double hermitian_defect() const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }
  friend SpectralField operator*(SpectralField a, double s) { return a *= s; }

  /// a += s * b
  void axpy(double s, const SpectralField& b);

 private:
  int slot(int j) const { return j + grid_.n_modes / 2 - 1; }
  void require_same_grid(const SpectralField& o) const;

  GridSpec grid_;
  std::vector<cd> coeffs_;
};

// ---- transforms -----------------------------------------------------------

/// Samples x_m = u(m L / n), m = 0..n-1, to coefficients.
SpectralField to_spectral(std::span<const double> samples, const GridSpec& grid);
/// Inverse of to_spectral (real part).
std::vector<double> to_physical(const SpectralField& f);

// ---- Fourier multipliers --------------------------------------------------

/// |D|^alpha: c_j *= |xi_j|^alpha.  The zero mode maps to 0 for alpha > 0.
SpectralField fractional_derivative(const SpectralField& f, double alpha);
/// (1 + |D|^alpha)^{-1}.
SpectralField resolvent(const SpectralField& f, double alpha);
/// (1 + |D|^alpha).
SpectralField one_plus_fractional(const SpectralField& f, double alpha);
/// d^k/dx^k: c_j *= (i xi_j)^k.  Odd orders zero the Nyquist mode.
SpectralField spatial_derivative(const SpectralField& f, int order);
/// ( L sum_j (1 + xi_j^2)^s |c_j|^2 )^{1/2}; s = 0 is the L^2(0,L) norm.
double sobolev_norm(const SpectralField& f, double s);
/// || d^k (1 + |D|^alpha)^{1/2} f ||_{L^2}.
double weighted_energy_norm(const SpectralField& f, double alpha, int k);
/// Zeroes |j| > dealias_fraction * n/2.
SpectralField dealias(const SpectralField& f);

/// Pointwise product f*g, computed physically on a zero-padded grid so the
/// result equals the exact lattice convolution restricted to the grid.
SpectralField multiply(const SpectralField& f, const SpectralField& g);

/// L sum_j f_j conj(g_j), the L^2(0,L) inner product.
cd inner_product(const SpectralField& f, const SpectralField& g);

/// Trapezoid approximation of int_0^L u^2 dx from physical samples.
double trapezoid_l2_squared(std::span<const double> samples, double domain_length);

}  // namespace fbbm
