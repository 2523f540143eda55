// The normal-form symbol m(a, b), its identities, growth envelopes, and the
// frequency-triple regions used by the quartic-form analysis.
//
// m(a, b) with xi = a + b is
//
//            xi (1 + |a|^al) (1 + |b|^al)
//   ------------------------------------------------------------------
//   2 [ xi (1 + |b|^al)(|a|^al - |xi|^al) - b (1 + |xi|^al)(|a|^al - |b|^al) ]
//
// Conventions on the structural lines:
//   a = 0 or b = 0   -> 0 (m is singular there; fields are mean-zero)
//   a + b = 0        -> the finite limit (1+B)^2 / (2 B (1 + al + B)), B = |b|^al
#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "fbbm/grid.hpp"
#include "fbbm/parallel.hpp"

namespace fbbm {

/// m(a, b) with the line conventions above.  Exactly symmetric in (a, b) and
/// even under (a, b) -> (-a, -b).  Throws DomainError if the denominator
/// vanishes off the structural lines.
double eval_m(double a, double b, double alpha);

/// The bare rational formula, no conventions and no argument canonicalization.
/// Used to test the symmetry the formula has on its own.
double eval_m_formula(double a, double b, double alpha);

/// Denominator bracket of m (without the factor 2).
double m_denominator(double a, double b, double alpha);

/// lim_{a+b -> 0} m(a, b) at fixed b.
double m_zero_sum_limit(double b, double alpha);

struct RelationResidual {
  double residual = 0.0;  ///< m(xi-eta,eta) eta (1+|xi|^al) + m(eta-xi,xi) xi (1+|eta|^al)
  double scale = 0.0;     ///< max of the two summands' magnitudes
  double relative() const { return scale > 0.0 ? std::abs(residual) / scale : std::abs(residual); }
};

/// Throws std::invalid_argument on the lines xi = 0, eta = 0, xi = eta.
RelationResidual functional_relation_residual(double xi, double eta, double alpha);

struct Envelope {
  double lower = 0.0;
  double upper = 0.0;
  bool small_regime = false;  ///< a^2 + b^2 <= 1
};

/// Shapes of the two-sided growth bound for |m(a, b)|:
///   a^2+b^2 <= 1 : |a|/|b| + |b|/|a|  <~ |m| <~  |a|^{1-al}/|b| + |b|^{1-al}/|a|
///   a^2+b^2 >= 1 : the two shapes swap roles.
Envelope growth_envelope(double a, double b, double alpha);

struct RegimeBounds {
  int samples = 0;
  double c_lower = 0.0;      ///< min |m| / lower shape
  double C_upper = 0.0;      ///< max |m| / upper shape
  double max_over_lower = 0.0;
  double min_over_upper = 0.0;
};

struct GrowthReport {
  double alpha = 0.0;
  int n_samples = 0;
  std::uint64_t seed = 0;
  double r_min = 1e-4;
  double r_max = 1e4;
  double angular_margin = 1e-2;
  RegimeBounds small;  ///< r <= 1
  RegimeBounds large;  ///< r >= 1
  double max_relation_residual = 0.0;  ///< relative, over the same samples
};

struct GrowthSampling {
  double r_min = 1e-4;
  double r_max = 1e4;
  double angular_margin = 1e-2;
};

/// Samples (a, b) = r (cos t, sin t) with log-uniform r and t kept at least
/// angular_margin away from the zero lines cos t = 0, sin t = 0,
/// cos t + sin t = 0, and reports the measured envelope constants.
GrowthReport verify_growth_bounds(double alpha, int n_samples, std::uint64_t seed,
                                  const GrowthSampling& sampling = {});

// ---- frequency-triple regions -------------------------------------------

enum class Region { A1, A2, A2c };

struct RegionLabel {
  Region region = Region::A1;
  bool sign_uniform = false;  ///< sgn(xi) = sgn(eta) = sgn(sigma), all nonzero
  bool positive_part = false; ///< A2c with xi, eta, sigma >= 1
  bool operator==(const RegionLabel&) const = default;
};

const char* region_name(Region r);

/// A1: min(|xi|,|eta|,|sigma|) < 1.
/// A2: otherwise, if |z2|/10 < |z1 - z2| + |z2 - z3| for some assignment.
/// A2c: the rest.
RegionLabel classify_region(double xi, double eta, double sigma);

/// (mu, nu) with xi = (1+mu) eta, sigma = (1+nu) eta.  Input must lie in the
/// positive part of A2c.
std::pair<double, double> mu_nu_coordinates(double xi, double eta, double sigma);

// ---- lattice table -------------------------------------------------------

/// m tabulated on lattice pairs (i dk, j dk), |i|, |j| <= radius.
class SymbolGrid {
 public:
  SymbolGrid(double alpha, double dk, int radius, Exec exec = default_exec());
  SymbolGrid(double alpha, const GridSpec& grid, Exec exec = default_exec())
      : SymbolGrid(alpha, grid.wavenumber_step(), grid.n_modes / 2, exec) {}

  double alpha() const { return alpha_; }
  double dk() const { return dk_; }
  int radius() const { return radius_; }
  double at(int i, int j) const { return values_[static_cast<std::size_t>(i + radius_) * width_ + (j + radius_)]; }

  struct Conventions {
    double singular_axes_value = 0.0;      ///< value used on a = 0 or b = 0
    bool zero_sum_uses_limit = true;       ///< a + b = 0 filled with the limit
  };
  Conventions conventions() const { return {}; }

 private:
  double alpha_;
  double dk_;
  int radius_;
  int width_;
  std::vector<double> values_;
};

}  // namespace fbbm
