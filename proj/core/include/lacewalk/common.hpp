#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lacewalk {

inline constexpr double kPi = 3.14159265358979323846;

/// Invalid configuration or argument. The CLI maps this to exit code 2.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An iteration failed to converge. The CLI maps this to exit code 3.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// n geometrically spaced points spanning [lo, hi], lo > 0.
std::vector<double> geometric_grid(double lo, double hi, int n);

/// n uniformly spaced points spanning [lo, hi].
std::vector<double> linear_grid(double lo, double hi, int n);

/// Surface area of the unit sphere S^{d-1} in R^d: 2 pi^{d/2} / Gamma(d/2).
double sphere_surface(int dim);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace lacewalk
