#pragma once

#include <memory>
#include <vector>

#include "lacewalk/gaussian_mixture.hpp"

namespace lacewalk {

/// Radial frequency grid on [0, k_max] with quadrature weights for
/// int_0^{k_max} . dk (composite trapezoid on the uniform default).
struct RadialGrid {
  std::vector<double> k;  // strictly increasing, k[0] = 0
  std::vector<double> w;  // positive, sum = k_max

  double k_max() const { return k.back(); }
  int size() const { return static_cast<int>(k.size()); }

  static std::shared_ptr<const RadialGrid> uniform(double k_max, int nodes);
};

using RadialGridPtr = std::shared_ptr<const RadialGrid>;

/// Radial profile of a rotationally invariant function's Fourier transform,
/// sampled on a grid. The value at k = 0 is the function's total mass.
struct RadialFn {
  RadialGridPtr grid;
  std::vector<double> v;

  double at0() const { return v.front(); }
};

/// Transform of a Gaussian mixture: sum_j w_j exp(-t_j k^2 / 2) per node.
RadialFn mixture_hat(const GaussianMixture& mix, RadialGridPtr grid);

/// Bessel J of half-integer order; twice_order in {1, 3, 5, 7} selects
/// nu = 1/2, 3/2, 5/2, 7/2. Closed forms with upward recurrence; ascending
/// series near 0 to avoid cancellation.
double bessel_j_half(int twice_order, double u);

/// Inverse radial Fourier transform at |x| = radius for odd d in {3,5,7,9}:
///   r > 0:  (2 pi)^{-d/2} r^{1-d/2} int_0^{k_max} fhat(k) J_{d/2-1}(k r) k^{d/2} dk
///   r = 0:  (2 pi)^{-d} S_{d-1} int_0^{k_max} k^{d-1} fhat(k) dk
/// Requires |fhat| to decay below decay_tol * |fhat(0)| at the grid end;
/// throws ValidationError otherwise (truncation unsafe).
double inverse_radial(const RadialFn& fhat, double radius, int dim, double decay_tol = 1e-14);

/// Rotational average of a plane wave over a sphere: Omega_d(u) =
/// Gamma(d/2) (2/u)^{d/2-1} J_{d/2-1}(u); Omega_d(0) = 1. Odd d in {3,5,7,9}.
double omega_kernel(int dim, double u);

}  // namespace lacewalk
