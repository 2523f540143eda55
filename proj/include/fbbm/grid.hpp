// Periodic grid description and fractional-order parameters.
#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace fbbm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a symbol denominator vanishes away from the structural lines.
class DomainError : public Error {
 public:
  using Error::Error;
};

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Uniform periodic grid on [0, L).
///
/// Lattice index j in {-n/2+1, ..., n/2} carries the physical frequency
/// xi_j = 2*pi*j / L.  Nonlinear products are truncated to
/// |j| <= dealias_fraction * n/2.
struct GridSpec {
  int n_modes = 64;
  double domain_length = kTwoPi * 16.0;
  double dealias_fraction = 2.0 / 3.0;

  GridSpec() = default;
  GridSpec(int n, double length, double fraction = 2.0 / 3.0);

  /// Throws std::invalid_argument if any field is out of range.
  void validate() const;

  double wavenumber_step() const { return kTwoPi / domain_length; }
  double frequency(int j) const { return wavenumber_step() * j; }
  int min_index() const { return -n_modes / 2 + 1; }
  int max_index() const { return n_modes / 2; }
  /// Largest |j| kept by dealias().
  int dealias_cutoff() const;
  double spacing() const { return domain_length / n_modes; }

  bool operator==(const GridSpec&) const = default;
};

/// Fractional order and Sobolev bookkeeping.
struct FracParams {
  double alpha = 0.5;
  int sobolev_N = 2;
  int max_k = 2;

  FracParams() = default;
  FracParams(double alpha, int N, int max_k);
  FracParams(double alpha, int N) : FracParams(alpha, N, N) {}

  void validate() const;
  /// Index of the energy space H^{N + alpha/2}.
  double energy_index() const { return sobolev_N + 0.5 * alpha; }
};

/// Throws std::invalid_argument("alpha out of (0,1)") unless 0 < alpha < 1.
void require_alpha(double alpha);

}  // namespace fbbm
