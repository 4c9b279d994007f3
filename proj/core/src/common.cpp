#include "lacewalk/common.hpp"

#include <cmath>

namespace lacewalk {

std::vector<double> geometric_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2)
    throw ValidationError("geometric_grid: need 0 < lo < hi and n >= 2");
  std::vector<double> g(n);
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = lo * std::exp(step * i);
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (!(hi >= lo) || n < 2) throw ValidationError("linear_grid: bad range");
  std::vector<double> g(n);
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = lo + step * i;
  g.back() = hi;
  return g;
}

double sphere_surface(int dim) {
  if (dim < 1) throw ValidationError("sphere_surface: dim >= 1 required");
  return 2.0 * std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw ValidationError("loglog_slope: need matching sizes >= 2");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace lacewalk
