#include "lacewalk/spectral.hpp"

#include <cmath>

#include "lacewalk/common.hpp"

namespace lacewalk {

std::shared_ptr<const RadialGrid> RadialGrid::uniform(double k_max, int nodes) {
  if (!(k_max > 0.0) || nodes < 8) throw ValidationError("RadialGrid: bad parameters");
  auto g = std::make_shared<RadialGrid>();
  g->k = linear_grid(0.0, k_max, nodes);
  const double h = k_max / (nodes - 1);
  g->w.assign(nodes, h);
  g->w.front() = 0.5 * h;
  g->w.back() = 0.5 * h;
  return g;
}

RadialFn mixture_hat(const GaussianMixture& mix, RadialGridPtr grid) {
  RadialFn f;
  f.grid = std::move(grid);
  f.v.resize(f.grid->size());
  for (int i = 0; i < f.grid->size(); ++i) f.v[i] = mix.hat(f.grid->k[i]);
  return f;
}

namespace {

// Ascending series J_nu(u) = (u/2)^nu / Gamma(nu+1) * sum_m term_m,
// term_{m+1} = term_m * (-u^2/4) / ((m+1)(nu+m+1)).
double bessel_series(double nu, double u) {
  const double x = -0.25 * u * u;
  double term = 1.0, sum = 1.0;
  for (int m = 0; m < 40; ++m) {
    term *= x / ((m + 1) * (nu + m + 1));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return std::pow(0.5 * u, nu) / std::tgamma(nu + 1.0) * sum;
}

}  // namespace

double bessel_j_half(int twice_order, double u) {
  if (twice_order != 1 && twice_order != 3 && twice_order != 5 && twice_order != 7)
    throw ValidationError("bessel_j_half: order must be 1/2, 3/2, 5/2 or 7/2");
  if (u < 0.0) throw ValidationError("bessel_j_half: u >= 0 required");
  const double nu = 0.5 * twice_order;
  if (u < 0.5) return bessel_series(nu, u);

  const double base = std::sqrt(2.0 / (kPi * u));
  const double s = std::sin(u), c = std::cos(u);
  double j_prev = base * s;               // nu = 1/2
  if (twice_order == 1) return j_prev;
  double j = base * (s / u - c);          // nu = 3/2
  for (int t = 3; t < twice_order; t += 2) {
    const double next = (static_cast<double>(t) / u) * j - j_prev;  // 2 nu / u = t / u
    j_prev = j;
    j = next;
  }
  return j;
}

double inverse_radial(const RadialFn& fhat, double radius, int dim, double decay_tol) {
  if (dim != 3 && dim != 5 && dim != 7 && dim != 9)
    throw ValidationError("inverse_radial: odd dim in {3,5,7,9} required");
  if (radius < 0.0) throw ValidationError("inverse_radial: radius >= 0 required");
  const RadialGrid& g = *fhat.grid;
  const double scale = std::abs(fhat.at0());
  const int n = g.size();
  double tail = 0.0;
  for (int i = n - n / 100 - 1; i < n; ++i) tail = std::max(tail, std::abs(fhat.v[i]));
  if (tail > decay_tol * std::max(scale, 1e-300))
    throw ValidationError("inverse_radial: insufficient decay at k_max, truncation unsafe");

  if (radius == 0.0) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      acc += g.w[i] * std::pow(g.k[i], dim - 1) * fhat.v[i];
    return std::pow(2.0 * kPi, -dim) * sphere_surface(dim) * acc;
  }
  const int twice_order = dim - 2;  // nu = d/2 - 1
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double k = g.k[i];
    acc += g.w[i] * fhat.v[i] * bessel_j_half(twice_order, k * radius) * std::pow(k, 0.5 * dim);
  }
  return std::pow(2.0 * kPi, -0.5 * dim) * std::pow(radius, 1.0 - 0.5 * dim) * acc;
}

double omega_kernel(int dim, double u) {
  if (dim != 3 && dim != 5 && dim != 7 && dim != 9)
    throw ValidationError("omega_kernel: odd dim in {3,5,7,9} required");
  if (u < 0.0) throw ValidationError("omega_kernel: u >= 0 required");
  const double nu = 0.5 * dim - 1.0;
  if (u < 0.5) {
    // Omega_d(u) = sum_m term_m, term_{m+1} = term_m * (-u^2/4) / ((m+1)(nu+m+1))
    const double x = -0.25 * u * u;
    double term = 1.0, sum = 1.0;
    for (int m = 0; m < 40; ++m) {
      term *= x / ((m + 1) * (nu + m + 1));
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }
  return std::tgamma(0.5 * dim) * std::pow(2.0 / u, nu) * bessel_j_half(dim - 2, u);
}

}  // namespace lacewalk
