#include "fbbm/symbol.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fbbm/rng.hpp"

namespace fbbm {

namespace {

// |x|^al - |y|^al without cancellation when |x| ~ |y|
double pow_diff(double x, double y, double alpha) {
  const double ax = std::abs(x), ay = std::abs(y);
  if (ax == 0.0 || ay == 0.0) return std::pow(ax, alpha) - std::pow(ay, alpha);
  return -std::pow(ax, alpha) * std::expm1(alpha * std::log1p((ay - ax) / ax));
}

}  // namespace

double m_denominator(double a, double b, double alpha) {
  // odd under (a,b) -> (-a,-b), symmetric under swap; evaluate at a <= b, a+b >= 0
  double sign = 1.0;
  if (a + b < 0.0) {
    a = -a;
    b = -b;
    sign = -1.0;
  }
  if (a > b) std::swap(a, b);
  const double xi = a + b;
  const double pa = std::pow(std::abs(a), alpha);
  const double pb = std::pow(std::abs(b), alpha);
  const double px = std::pow(std::abs(xi), alpha);
  // regrouped so that the two terms share a sign
  if (a >= 0.0) return sign * (a * (1.0 + pb) * pow_diff(a, xi, alpha) + b * (1.0 + pa) * pow_diff(b, xi, alpha));
  return sign * (a * (1.0 + px) * pow_diff(a, b, alpha) + xi * (1.0 + pa) * pow_diff(b, xi, alpha));
}

double eval_m_formula(double a, double b, double alpha) {
  const double xi = a + b;
  const double pa = std::pow(std::abs(a), alpha);
  const double pb = std::pow(std::abs(b), alpha);
  return xi * (1.0 + pa) * (1.0 + pb) / (2.0 * m_denominator(a, b, alpha));
}

double m_zero_sum_limit(double b, double alpha) {
  const double B = std::pow(std::abs(b), alpha);
  return (1.0 + B) * (1.0 + B) / (2.0 * B * (1.0 + alpha + B));
}

double eval_m(double a, double b, double alpha) {
  if (a == 0.0 || b == 0.0) return 0.0;
  // canonical representative of {(a,b), (b,a), (-a,-b), (-b,-a)}
  const double s = a + b;
  if (s < 0.0 || (s == 0.0 && a < 0.0)) {
    a = -a;
    b = -b;
  }
  if (a > b) std::swap(a, b);
  if (a + b == 0.0) return m_zero_sum_limit(b, alpha);
  const double den = m_denominator(a, b, alpha);
  if (den == 0.0 || !std::isfinite(den)) {
    throw DomainError("m: vanishing denominator off the structural lines at (" + std::to_string(a) +
                      ", " + std::to_string(b) + ")");
  }
  const double pa = std::pow(std::abs(a), alpha);
  const double pb = std::pow(std::abs(b), alpha);
  return (a + b) * (1.0 + pa) * (1.0 + pb) / (2.0 * den);
}

RelationResidual functional_relation_residual(double xi, double eta, double alpha) {
  if (xi == 0.0 || eta == 0.0 || xi == eta) {
    throw std::invalid_argument("functional_relation_residual: (xi, eta) on a singular line");
  }
  const double t1 = eval_m(xi - eta, eta, alpha) * eta * (1.0 + std::pow(std::abs(xi), alpha));
  const double t2 = eval_m(eta - xi, xi, alpha) * xi * (1.0 + std::pow(std::abs(eta), alpha));
  return {t1 + t2, std::max(std::abs(t1), std::abs(t2))};
}

Envelope growth_envelope(double a, double b, double alpha) {
  if (a == 0.0 || b == 0.0) throw std::invalid_argument("growth_envelope: zero argument");
  const double aa = std::abs(a), ab = std::abs(b);
  const double plain = aa / ab + ab / aa;
  const double damped = std::pow(aa, 1.0 - alpha) / ab + std::pow(ab, 1.0 - alpha) / aa;
  Envelope e;
  e.small_regime = a * a + b * b <= 1.0;
  if (e.small_regime) {
    e.lower = plain;
    e.upper = damped;
  } else {
    e.lower = damped;
    e.upper = plain;
  }
  return e;
}

namespace {

double angular_distance(double t, double target) {
  double d = std::fmod(std::abs(t - target), 2.0 * std::numbers::pi);
  return std::min(d, 2.0 * std::numbers::pi - d);
}

bool near_zero_line(double t, double margin) {
  constexpr double pi = std::numbers::pi;
  static constexpr std::array<double, 6> lines = {0.0, 0.5 * pi, pi, 1.5 * pi, 0.75 * pi, 1.75 * pi};
  for (double l : lines) {
    if (angular_distance(t, l) < margin) return true;
  }
  return false;
}

void accumulate(RegimeBounds& rb, double ratio_lower, double ratio_upper) {
  if (rb.samples == 0) {
    rb.c_lower = rb.max_over_lower = ratio_lower;
    rb.C_upper = rb.min_over_upper = ratio_upper;
  } else {
    rb.c_lower = std::min(rb.c_lower, ratio_lower);
    rb.max_over_lower = std::max(rb.max_over_lower, ratio_lower);
    rb.C_upper = std::max(rb.C_upper, ratio_upper);
    rb.min_over_upper = std::min(rb.min_over_upper, ratio_upper);
  }
  ++rb.samples;
}

}  // namespace

GrowthReport verify_growth_bounds(double alpha, int n_samples, std::uint64_t seed,
                                  const GrowthSampling& sampling) {
  require_alpha(alpha);
  if (n_samples < 1000) throw std::invalid_argument("verify_growth_bounds: n_samples must be >= 1000");
  if (!(sampling.r_min > 0.0 && sampling.r_max >= sampling.r_min)) {
    throw std::invalid_argument("verify_growth_bounds: bad radius range");
  }
  GrowthReport rep;
  rep.alpha = alpha;
  rep.n_samples = n_samples;
  rep.seed = seed;
  rep.r_min = sampling.r_min;
  rep.r_max = sampling.r_max;
  rep.angular_margin = sampling.angular_margin;

  Rng rng(seed);
  const double lmin = std::log(sampling.r_min), lmax = std::log(sampling.r_max);
  for (int s = 0; s < n_samples; ++s) {
    const double r = std::exp(rng.uniform(lmin, lmax));
    double t = 0.0;
    do {
      t = rng.uniform(0.0, 2.0 * std::numbers::pi);
    } while (near_zero_line(t, sampling.angular_margin));
    const double a = r * std::cos(t), b = r * std::sin(t);
    const double m = std::abs(eval_m(a, b, alpha));
    const Envelope env = growth_envelope(a, b, alpha);
    accumulate(env.small_regime ? rep.small : rep.large, m / env.lower, m / env.upper);
    rep.max_relation_residual =
        std::max(rep.max_relation_residual, functional_relation_residual(a + b, b, alpha).relative());
  }
  return rep;
}

// ---------------------------------------------------------------------------

const char* region_name(Region r) {
  switch (r) {
    case Region::A1: return "A1";
    case Region::A2: return "A2";
    case Region::A2c: return "A2c";
  }
  return "?";
}

RegionLabel classify_region(double xi, double eta, double sigma) {
  RegionLabel lab;
  lab.sign_uniform = (xi > 0 && eta > 0 && sigma > 0) || (xi < 0 && eta < 0 && sigma < 0);
  if (std::min({std::abs(xi), std::abs(eta), std::abs(sigma)}) < 1.0) {
    lab.region = Region::A1;
    return lab;
  }
  const std::array<double, 3> z = {xi, eta, sigma};
  for (int mid = 0; mid < 3; ++mid) {
    const double z2 = z[mid];
    const double z1 = z[(mid + 1) % 3];
    const double z3 = z[(mid + 2) % 3];
    if (0.1 * std::abs(z2) < std::abs(z1 - z2) + std::abs(z2 - z3)) {
      lab.region = Region::A2;
      return lab;
    }
  }
  lab.region = Region::A2c;
  lab.positive_part = xi >= 1.0 && eta >= 1.0 && sigma >= 1.0;
  return lab;
}

std::pair<double, double> mu_nu_coordinates(double xi, double eta, double sigma) {
  const RegionLabel lab = classify_region(xi, eta, sigma);
  if (lab.region != Region::A2c || !lab.positive_part) {
    throw std::invalid_argument("mu_nu_coordinates: triple not in the positive part of A2c");
  }
  return {xi / eta - 1.0, sigma / eta - 1.0};
}

// ---------------------------------------------------------------------------

SymbolGrid::SymbolGrid(double alpha, double dk, int radius, Exec exec)
    : alpha_(alpha), dk_(dk), radius_(radius), width_(2 * radius + 1) {
  require_alpha(alpha);
  if (radius < 1 || !(dk > 0.0)) throw std::invalid_argument("SymbolGrid: bad lattice");
  values_.assign(static_cast<std::size_t>(width_) * width_, 0.0);
  for_each_row(-radius_, radius_, exec, [&](int i) {
    double* row = values_.data() + static_cast<std::size_t>(i + radius_) * width_;
    for (int j = -radius_; j <= radius_; ++j) row[j + radius_] = eval_m(i * dk_, j * dk_, alpha_);
  });
}

}  // namespace fbbm
