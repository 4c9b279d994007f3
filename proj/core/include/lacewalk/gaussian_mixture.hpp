#pragma once

#include <vector>

namespace lacewalk {

/// Radial value of the centered isotropic Gaussian density with covariance
/// t * I_d at |x| = r:  (2 pi t)^{-d/2} exp(-r^2 / 2t).
double gaussian_radial(int dim, double t, double r);

struct MixtureTerm {
  double weight;
  double var;  // covariance scale t > 0
};

/// Signed finite mixture of centered isotropic Gaussians,
///   sum_j w_j phi_{t_j},  phi_t = N(0, t I_d).
/// Closed under convolution: (w, t) * (w', t') -> (w w', t + t').
class GaussianMixture {
 public:
  GaussianMixture(int dim, std::vector<MixtureTerm> terms);

  /// Single term w * phi_t.
  static GaussianMixture gaussian(int dim, double t, double weight = 1.0);

  int dim() const { return dim_; }
  const std::vector<MixtureTerm>& terms() const { return terms_; }
  bool positive() const;

  /// Total integral sum_j w_j (each phi is normalized).
  double mass() const;
  double abs_mass() const;

  /// Radial moment integral |x|^{2k} against the mixture, k in {0,1,2}:
  /// per term 1, d t, d(d+2) t^2.
  double moment(int k) const;

  /// Value at radius r.
  double value(double r) const;
  /// Value of |mixture| at radius r, i.e. abs of the signed sum.
  double abs_value(double r) const { return std::abs(value(r)); }

  /// Fourier transform at radial frequency k: sum_j w_j exp(-t_j k^2 / 2).
  double hat(double k) const;

  GaussianMixture convolve(const GaussianMixture& other) const;
  GaussianMixture scaled(double factor) const;
  GaussianMixture& operator+=(const GaussianMixture& other);

  /// Combines terms with identical variance (value-preserving).
  void merge_equal_vars();

  /// Drops terms with |w| below rel_tol times the total |w|; meant for
  /// positive envelope mixtures where tiny terms cannot cancel anything.
  void prune(double rel_tol);

 private:
  int dim_;
  std::vector<MixtureTerm> terms_;
};

}  // namespace lacewalk
