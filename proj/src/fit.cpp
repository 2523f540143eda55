#include "fbbm/fit.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fbbm {

PowerFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_power_law: size mismatch");
  const int n = static_cast<int>(x.size());
  if (n < 2) throw std::invalid_argument("fit_power_law: need at least 2 points");
  std::vector<double> lx(n), ly(n);
  for (int i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(y[i])) {
      throw std::invalid_argument("fit_power_law: data must be positive and finite");
    }
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_power_law: x values are all equal");
  PowerFit f;
  f.points = n;
  f.exponent = sxy / sxx;
  f.log_prefactor = my - f.exponent * mx;
  if (n > 2) {
    double sse = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = ly[i] - (f.log_prefactor + f.exponent * lx[i]);
      sse += r * r;
    }
    f.stderr_exponent = std::sqrt(sse / (n - 2) / sxx);
  }
  return f;
}

}  // namespace fbbm
