#include "fbbm/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fbbm/fft.hpp"

namespace fbbm {

SpectralField::SpectralField(const GridSpec& grid) : grid_(grid), coeffs_(grid.n_modes, cd{}) {
  grid_.validate();
}

cd SpectralField::coeff_or_zero(int j) const {
  if (j < grid_.min_index() || j > grid_.max_index()) return {};
  return coeffs_[slot(j)];
}

void SpectralField::set_mode(int j, cd value) {
  const int nyq = grid_.max_index();
  if (j == 0 || std::abs(j) == nyq) {
    coeff(j == 0 ? 0 : nyq) = cd(value.real(), 0.0);
    return;
  }
  coeff(j) = value;
  coeff(-j) = std::conj(value);
}

int SpectralField::support_radius(double rel_tol) const {
  const double thresh = rel_tol * max_abs();
  int r = 0;
  for (int j = grid_.min_index(); j <= grid_.max_index(); ++j) {
    const double a = std::abs(coeff(j));
    if (a > thresh && a > 0.0) r = std::max(r, std::abs(j));
  }
  return r;
}

double SpectralField::max_abs() const {
  double m = 0.0;
  for (const cd& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

bool SpectralField::is_mean_zero(double rel_tol) const {
  return std::abs(coeff(0)) <= rel_tol * max_abs();
}

double SpectralField::hermitian_defect() const {
  double d = std::abs(coeff(0).imag());
  d = std::max(d, std::abs(coeff(grid_.max_index()).imag()));
  for (int j = 1; j < grid_.max_index(); ++j) {
    d = std::max(d, std::abs(coeff(-j) - std::conj(coeff(j))));
  }
  return d;
}

void SpectralField::require_same_grid(const SpectralField& o) const {
  if (!(grid_ == o.grid_)) throw std::invalid_argument("grid mismatch");
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_grid(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_grid(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (cd& c : coeffs_) c *= s;
  return *this;
}

void SpectralField::axpy(double s, const SpectralField& b) {
  require_same_grid(b);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * b.coeffs_[i];
}

// ---------------------------------------------------------------------------

SpectralField to_spectral(std::span<const double> samples, const GridSpec& grid) {
  if (static_cast<int>(samples.size()) != grid.n_modes) {
    throw std::invalid_argument("to_spectral: expected " + std::to_string(grid.n_modes) +
                                " samples, got " + std::to_string(samples.size()));
  }
  const int n = grid.n_modes;
  std::vector<cd> buf(samples.begin(), samples.end());
  fft::forward(buf, buf);
  SpectralField f(grid);
  const double inv_n = 1.0 / n;
  for (int k = 0; k < n; ++k) {
    const int j = k <= n / 2 ? k : k - n;
    if (j < grid.min_index()) continue;
    f.coeff(j) = buf[k] * inv_n;
  }
  // enforce exact realness of the self-conjugate modes
  f.coeff(0) = cd(f.coeff(0).real(), 0.0);
  f.coeff(n / 2) = cd(f.coeff(n / 2).real(), 0.0);
  return f;
}

std::vector<double> to_physical(const SpectralField& f) {
  const int n = f.grid().n_modes;
  std::vector<cd> buf(n);
  for (int j = f.grid().min_index(); j <= f.grid().max_index(); ++j) {
    buf[j >= 0 ? j : j + n] = f.coeff(j);
  }
  fft::backward(buf, buf);
  std::vector<double> out(n);
  for (int m = 0; m < n; ++m) out[m] = buf[m].real();
  return out;
}

namespace {

template <class Mult>
SpectralField apply_multiplier(const SpectralField& f, Mult&& mult) {
  SpectralField out(f.grid());
  for (int j = f.grid().min_index(); j <= f.grid().max_index(); ++j) {
    out.coeff(j) = mult(j, f.grid().frequency(j)) * f.coeff(j);
  }
  return out;
}

}  // namespace

SpectralField fractional_derivative(const SpectralField& f, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("fractional_derivative: alpha must be >= 0");
  return apply_multiplier(f, [&](int, double xi) -> cd { return std::pow(std::abs(xi), alpha); });
}

SpectralField resolvent(const SpectralField& f, double alpha) {
  require_alpha(alpha);
  return apply_multiplier(f, [&](int, double xi) -> cd { return 1.0 / (1.0 + std::pow(std::abs(xi), alpha)); });
}

SpectralField one_plus_fractional(const SpectralField& f, double alpha) {
  require_alpha(alpha);
  return apply_multiplier(f, [&](int, double xi) -> cd { return 1.0 + std::pow(std::abs(xi), alpha); });
}

SpectralField spatial_derivative(const SpectralField& f, int order) {
  if (order < 0) throw std::invalid_argument("spatial_derivative: order must be >= 0");
  const int nyq = f.grid().max_index();
  return apply_multiplier(f, [&](int j, double xi) -> cd {
    if (order % 2 == 1 && j == nyq) return 0.0;
    cd ik(0.0, xi);
    cd r = 1.0;
    for (int p = 0; p < order; ++p) r *= ik;
    return r;
  });
}

double sobolev_norm(const SpectralField& f, double s) {
  if (s < 0.0) throw std::invalid_argument("sobolev_norm: s must be >= 0");
  double acc = 0.0;
  for (int j = f.grid().min_index(); j <= f.grid().max_index(); ++j) {
    const double xi = f.grid().frequency(j);
    acc += std::pow(1.0 + xi * xi, s) * std::norm(f.coeff(j));
  }
  return std::sqrt(f.grid().domain_length * acc);
}

double weighted_energy_norm(const SpectralField& f, double alpha, int k) {
  require_alpha(alpha);
  if (k < 0) throw std::invalid_argument("weighted_energy_norm: k must be >= 0");
  double acc = 0.0;
  for (int j = f.grid().min_index(); j <= f.grid().max_index(); ++j) {
    const double xi = std::abs(f.grid().frequency(j));
    acc += std::pow(xi, 2 * k) * (1.0 + std::pow(xi, alpha)) * std::norm(f.coeff(j));
  }
  return std::sqrt(f.grid().domain_length * acc);
}

SpectralField dealias(const SpectralField& f) {
  const int cut = f.grid().dealias_cutoff();
  SpectralField out = f;
  for (int j = f.grid().min_index(); j <= f.grid().max_index(); ++j) {
    if (std::abs(j) > cut) out.coeff(j) = 0.0;
  }
  return out;
}

SpectralField multiply(const SpectralField& f, const SpectralField& g) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("multiply: grid mismatch");
  const int n = f.grid().n_modes;
  const int m = 2 * n;  // > 3n/2: no wrap-around onto |j| <= n/2
  const int nyq = n / 2;
  auto pad = [&](const SpectralField& h) {
    std::vector<cd> b(m);
    for (int j = -nyq + 1; j < nyq; ++j) b[j >= 0 ? j : j + m] = h.coeff(j);
    // the stored Nyquist coefficient stands for the pair +-n/2
    b[nyq] = 0.5 * h.coeff(nyq);
    b[m - nyq] = 0.5 * h.coeff(nyq);
    fft::backward(b, b);
    return b;
  };
  std::vector<cd> pf = pad(f);
  const std::vector<cd> pg = pad(g);
  for (int i = 0; i < m; ++i) pf[i] *= pg[i];
  fft::forward(pf, pf);
  SpectralField out(f.grid());
  const double inv_m = 1.0 / m;
  for (int j = -nyq + 1; j < nyq; ++j) out.coeff(j) = pf[j >= 0 ? j : j + m] * inv_m;
  out.coeff(nyq) = (pf[nyq] + pf[m - nyq]) * inv_m;
  return out;
}

cd inner_product(const SpectralField& f, const SpectralField& g) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("inner_product: grid mismatch");
  cd acc = 0.0;
  for (int j = f.grid().min_index(); j <= f.grid().max_index(); ++j) {
    acc += f.coeff(j) * std::conj(g.coeff(j));
  }
  return f.grid().domain_length * acc;
}

double trapezoid_l2_squared(std::span<const double> samples, double domain_length) {
  double acc = 0.0;
  for (double v : samples) acc += v * v;
  return acc * domain_length / static_cast<double>(samples.size());
}

}  // namespace fbbm
