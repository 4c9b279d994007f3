#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace lacewalk {

/// Mean, standard error and sample count of a Monte Carlo observable.
struct McEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  std::int64_t n_samples = 0;
};

/// Running (sum, sum of squares) accumulator; partials merge exactly.
struct Accum {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::int64_t n = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++n;
  }
  void merge(const Accum& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    n += o.n;
  }
  McEstimate estimate() const {
    McEstimate e;
    e.n_samples = n;
    if (n == 0) return e;
    e.mean = sum / static_cast<double>(n);
    if (n > 1) {
      const double var = std::max(0.0, sum_sq / static_cast<double>(n) - e.mean * e.mean);
      e.std_err = std::sqrt(var / static_cast<double>(n - 1));
    }
    return e;
  }
};

}  // namespace lacewalk
