#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lacewalk/gaussian_mixture.hpp"

namespace lacewalk {

/// Positive rotationally invariant envelope family Gamma_n dominating |B_n|.
/// Two presets:
///   power_law(a):  Gamma_n = n^{-a} phi_{n/2}
///   saw(K):        Gamma_n = K n^{-d/2} sum_{k=1}^{n} k^{1-d/2} phi_{2k/5}
class MajorantFamily {
 public:
  enum class Kind { PowerLaw, Saw };

  static MajorantFamily power_law(double a, int dim);
  static MajorantFamily saw(double K, int dim);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  double param() const { return param_; }  // a or K
  std::string name() const;

  GaussianMixture gamma(int n) const;

  /// gamma^{(k)}(n) = int |y|^{2k} Gamma_n(y) dy, closed form, k in {0,1,2}.
  double moment(int n, int k) const;

  /// moment(n, k) for n = 1..n_max in one O(n_max) pass.
  std::vector<double> moment_table(int k, int n_max) const;

  /// Envelope convolution constant: Gamma_m * Gamma_n <= chi(m, n) Gamma_{m+n}
  /// pointwise. PowerLaw: ((m+n)/(m n))^a exactly. Saw: fitted prefactor times
  /// ((m+n)/(m n))^{d/2}.
  double chi(int m, int n) const;

 private:
  MajorantFamily(Kind k, double p, int dim);
  void fit_chi_constant();

  Kind kind_;
  double param_;
  int dim_;
  double chi_constant_ = 1.0;  // Saw only
};

/// Error-rate table for the walk application: n^{-1/2} (d=5),
/// n^{-1} log n (d=6), n^{-1} (d>=7). Rejects d < 5.
double clt_rate(int dim, int n);

/// phi_{n delta (1+eps)} as a single-term mixture; n may be fractional.
GaussianMixture psi_mixture(int dim, double delta, double eps, double n);

/// zeta_1, zeta_2 and their Cesaro combination zbar for one family:
///   zeta_1(n) = 1 + sum_{i<=2} sum_{m<=n} m^{2-i} gamma^{(i)}(m)
///   zeta_2(n) = sum_{m>=n} (gamma^{(1)}(m) + m gamma^{(0)}(m)), tail truncated
///   zbar(n)   = n^{-2} sum_{j<=n} zeta_1(j) + n^{-1} sum_{j<=n} zeta_2(j)
struct ZetaTable {
  std::vector<double> zeta1, zeta2, zbar;  // index 1..n_max; [0] unused
  double zeta2_tail_term = 0.0;            // magnitude of the last term at the horizon
  int horizon = 0;
  int n_max = 0;
};

ZetaTable make_zeta_table(const MajorantFamily& family, int n_max, int horizon = 0);

/// Composite error envelope f_n = sum_{s=1}^{[n/2]} s (psi_s * Gamma_{n-s})
/// + zbar(n) psi_n, as a positive mixture (terms merged and pruned).
GaussianMixture f_profile(const MajorantFamily& family, const ZetaTable& zeta, double delta,
                          double eps, int n);

/// Convolution kernel kappa(n) = sum_{s=1}^{[n/2]} psi_s * Gamma_{n-s}
/// + (zbar(n)/n) psi_n.
GaussianMixture kappa_profile(const MajorantFamily& family, const ZetaTable& zeta, double delta,
                              double eps, int n);

/// Empirical constant sup_{n <= n_max, r} (sum_j kappa(j) * f_{n-j})(r) / f_n(r)
/// with f_0 the point mass (the j = n term contributes kappa(n) itself).
struct LeMainResult {
  double constant = 0.0;
  std::vector<double> per_n;  // index 1..n_max; [0] unused
};
LeMainResult le_main_check(const MajorantFamily& family, double delta, double eps, int n_max,
                           std::span<const double> radii);

/// Empirical envelope-condition constants. k1..k6 are suprema / partial sums
/// over finite grids; growth diagnostics flag conditions whose sums keep
/// growing when the range doubles.
struct ConditionReport {
  double k1 = 0, k2 = 0, k3 = 0, k4 = 0, k5 = 0, k6 = 0;
  double k4_tail = 0, k5_tail = 0, k6_tail = 0;  // last-term magnitudes
  double b1_growth = 0;                          // B1 sum at n_max over value at n_max/2
  double b4_slope = 0;                           // decay exponent of the slowest B4 term
  bool b1_ok = false, b2_ok = false, b3_ok = false, b4_ok = false;
  std::vector<std::string> violations;
  bool all_ok() const { return b1_ok && b2_ok && b3_ok && b4_ok; }
};

ConditionReport condition_report(const MajorantFamily& family, int n_max);

/// JSON form of a report: keys k1..k6, violations, tails.
std::string to_json_string(const ConditionReport& report);

}  // namespace lacewalk
