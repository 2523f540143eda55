// Band-limited coefficient sequences on the full integer lattice.
//
// A LatticeSeries holds c_j for |j| <= radius and is zero elsewhere; products
// and bilinear forms grow the radius instead of truncating, so every lattice
// sum built from them is exact (no aliasing, no dealiasing).  The quartic-form
// identities are checked on this representation.
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fbbm/parallel.hpp"
#include "fbbm/spectral_field.hpp"
#include "fbbm/symbol.hpp"

namespace fbbm {

class LatticeSeries {
 public:
  LatticeSeries(int radius, double dk, double domain_length);
  /// Copies the coefficients of f with |j| < n/2 (the Nyquist slot must be zero).
  static LatticeSeries from_field(const SpectralField& f);

  int radius() const { return radius_; }
  double dk() const { return dk_; }
  double domain_length() const { return length_; }
  double frequency(int j) const { return dk_ * j; }

  cd at(int j) const { return (j < -radius_ || j > radius_) ? cd{} : c_[j + radius_]; }
  cd& operator[](int j) { return c_[j + radius_]; }
  std::span<const cd> data() const { return c_; }

  /// Restricts to a SpectralField on grid (coefficients outside the grid dropped).
  SpectralField to_field(const GridSpec& grid) const;

  LatticeSeries& operator+=(const LatticeSeries& o);
  LatticeSeries& operator*=(cd s);
  friend LatticeSeries operator+(LatticeSeries a, const LatticeSeries& b) { return a += b; }
  friend LatticeSeries operator*(cd s, LatticeSeries a) { return a *= s; }

 private:
  int radius_;
  double dk_;
  double length_;
  std::vector<cd> c_;
};

LatticeSeries derivative(const LatticeSeries& f, int order);
LatticeSeries resolvent(const LatticeSeries& f, double alpha);
LatticeSeries one_plus_fractional(const LatticeSeries& f, double alpha);
/// Exact convolution; radius adds.
LatticeSeries product(const LatticeSeries& f, const LatticeSeries& g);
/// L sum_j f_j conj(g_j).
cd inner(const LatticeSeries& f, const LatticeSeries& g);

/// P(f, g)^(xi) = sum_eta m(xi - eta, eta) f(xi - eta) g(eta), exact.
/// The symbol grid radius must cover max(f.radius, g.radius).
LatticeSeries bilinear(const LatticeSeries& f, const LatticeSeries& g, const SymbolGrid& m,
                       Exec exec = default_exec());

namespace kernels {

/// Dense P-sum over index ranges: out[x] for x in [-(rf+rg), rf+rg].
/// f has radius rf, g radius rg; entries are indexed from -radius.
void bilinear_sum(std::span<const cd> f, int rf, std::span<const cd> g, int rg, const SymbolGrid& m,
                  std::span<cd> out, Exec exec);

}  // namespace kernels

}  // namespace fbbm
