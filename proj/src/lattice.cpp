#include "fbbm/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fbbm {

LatticeSeries::LatticeSeries(int radius, double dk, double domain_length)
    : radius_(radius), dk_(dk), length_(domain_length), c_(2 * radius + 1, cd{}) {
  if (radius < 0) throw std::invalid_argument("LatticeSeries: negative radius");
}

LatticeSeries LatticeSeries::from_field(const SpectralField& f) {
  const GridSpec& g = f.grid();
  if (f.coeff(g.max_index()) != cd{}) {
    throw std::invalid_argument("LatticeSeries::from_field: Nyquist mode must be zero");
  }
  const int r = f.support_radius();
  LatticeSeries s(r, g.wavenumber_step(), g.domain_length);
  for (int j = -r; j <= r; ++j) s[j] = f.coeff(j);
  return s;
}

SpectralField LatticeSeries::to_field(const GridSpec& grid) const {
  SpectralField f(grid);
  for (int j = std::max(-radius_, grid.min_index()); j <= std::min(radius_, grid.max_index()); ++j) {
    f.coeff(j) = at(j);
  }
  return f;
}

LatticeSeries& LatticeSeries::operator+=(const LatticeSeries& o) {
  if (o.radius_ > radius_) {
    LatticeSeries wide(o.radius_, dk_, length_);
    for (int j = -radius_; j <= radius_; ++j) wide[j] = at(j);
    *this = std::move(wide);
  }
  for (int j = -o.radius_; j <= o.radius_; ++j) (*this)[j] += o.at(j);
  return *this;
}

LatticeSeries& LatticeSeries::operator*=(cd s) {
  for (cd& c : c_) c *= s;
  return *this;
}

namespace {

template <class Mult>
LatticeSeries map_modes(const LatticeSeries& f, Mult&& mult) {
  LatticeSeries out(f.radius(), f.dk(), f.domain_length());
  for (int j = -f.radius(); j <= f.radius(); ++j) out[j] = mult(f.frequency(j)) * f.at(j);
  return out;
}

cd ipow(double xi, int order) {
  const cd ik(0.0, xi);
  cd r = 1.0;
  for (int p = 0; p < order; ++p) r *= ik;
  return r;
}

}  // namespace

LatticeSeries derivative(const LatticeSeries& f, int order) {
  return map_modes(f, [&](double xi) { return ipow(xi, order); });
}

LatticeSeries resolvent(const LatticeSeries& f, double alpha) {
  return map_modes(f, [&](double xi) -> cd { return 1.0 / (1.0 + std::pow(std::abs(xi), alpha)); });
}

LatticeSeries one_plus_fractional(const LatticeSeries& f, double alpha) {
  return map_modes(f, [&](double xi) -> cd { return 1.0 + std::pow(std::abs(xi), alpha); });
}

LatticeSeries product(const LatticeSeries& f, const LatticeSeries& g) {
  const int r = f.radius() + g.radius();
  LatticeSeries out(r, f.dk(), f.domain_length());
  for (int a = -f.radius(); a <= f.radius(); ++a) {
    const cd fa = f.at(a);
    if (fa == cd{}) continue;
    for (int b = -g.radius(); b <= g.radius(); ++b) out[a + b] += fa * g.at(b);
  }
  return out;
}

cd inner(const LatticeSeries& f, const LatticeSeries& g) {
  const int r = std::min(f.radius(), g.radius());
  cd acc = 0.0;
  for (int j = -r; j <= r; ++j) acc += f.at(j) * std::conj(g.at(j));
  return f.domain_length() * acc;
}

LatticeSeries bilinear(const LatticeSeries& f, const LatticeSeries& g, const SymbolGrid& m, Exec exec) {
  LatticeSeries out(f.radius() + g.radius(), f.dk(), f.domain_length());
  std::vector<cd> buf(2 * out.radius() + 1);
  kernels::bilinear_sum(f.data(), f.radius(), g.data(), g.radius(), m, buf, exec);
  for (int j = -out.radius(); j <= out.radius(); ++j) out[j] = buf[j + out.radius()];
  return out;
}

namespace kernels {

void bilinear_sum(std::span<const cd> f, int rf, std::span<const cd> g, int rg, const SymbolGrid& m,
                  std::span<cd> out, Exec exec) {
  if (std::max(rf, rg) > m.radius()) {
    throw std::invalid_argument("bilinear_sum: symbol grid radius " + std::to_string(m.radius()) +
                                " does not cover inputs of radius " + std::to_string(std::max(rf, rg)));
  }
  const int ro = rf + rg;
  if (static_cast<int>(out.size()) != 2 * ro + 1) throw std::invalid_argument("bilinear_sum: output size");
  for_each_row(-ro, ro, exec, [&](int x) {
    // eta runs over g's support with x - eta inside f's support
    const int lo = std::max(-rg, x - rf);
    const int hi = std::min(rg, x + rf);
    cd acc = 0.0;
    for (int eta = lo; eta <= hi; ++eta) {
      const int a = x - eta;
      acc += m.at(a, eta) * f[a + rf] * g[eta + rg];
    }
    out[x + ro] = acc;
  });
}

}  // namespace kernels

}  // namespace fbbm
