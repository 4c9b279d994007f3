#pragma once

#include <optional>
#include <vector>

#include "lacewalk/bfamily.hpp"
#include "lacewalk/sequence.hpp"
#include "lacewalk/spectral.hpp"

namespace lacewalk {

/// Frequency-space interaction input for the recursion: scalars b_m, bbar_m
/// and the transforms B_m^ sampled on the shared grid, m = 1..n_max.
struct BHatInput {
  std::vector<double> b;
  std::vector<double> bbar;
  std::vector<RadialFn> hat;
  int n_max() const { return static_cast<int>(b.size()); }
};

BHatInput make_bhat(const BFamilySpec& family, int n_max, const RadialGridPtr& grid);

struct SolverConfig {
  int dim = 5;
  double lambda = 0.0;
  double epsilon = 0.01;  // envelope widening, (0, 1/100] by default
  int n_max = 32;
  RadialGridPtr grid;           // default: uniform(12, 2048)
  std::vector<double> radii;    // default: 64 geometric points up to 8 sigma
  double decay_tol = 1e-14;     // inverse-transform truncation guard

  void validate() const;
};

/// Completed frequency-space run: the transforms C_n^ on the grid for every n,
/// the scalar normalization, and real-space evaluation helpers. Immutable.
class SolverRun {
 public:
  SolverRun(SolverConfig cfg, BHatInput bhat, std::optional<MajorantFamily> majorant);

  const SolverConfig& config() const { return cfg_; }
  const SequenceSolution& sequence() const { return seq_; }
  const BHatInput& bhat() const { return bhat_; }
  const std::vector<RadialFn>& c_hat() const { return c_hat_; }
  const std::optional<MajorantFamily>& majorant() const { return majorant_; }
  const ZetaTable& zeta() const;  // throws when no envelope family is declared

  /// Walk-type envelopes need delta (1 + eps) >= 4/5 for the bound collapse;
  /// checked post-solve, true for other families.
  bool envelope_scale_ok() const { return envelope_scale_ok_; }

  /// C_n at |x| = radius via the inverse radial transform.
  double density(int n, double radius) const;
  /// C_n over the configured radius grid.
  std::vector<double> density_profile(int n) const;

  /// Max residual of the frequency recursion over all n and nodes (diagnostic).
  double recursion_residual() const;

 private:
  SolverConfig cfg_;
  BHatInput bhat_;
  std::optional<MajorantFamily> majorant_;
  SequenceSolution seq_;
  std::vector<RadialFn> c_hat_;
  std::optional<ZetaTable> zeta_;
  bool envelope_scale_ok_ = true;
};

/// Runs C_n^ (k) = C_{n-1}^ (k) e^{-k^2/2} + lambda sum_m c_m B_m^ (k) C_{n-m}^ (k)
/// with C_0^ = 1 and c pre-solved by the scalar recursion.
SolverRun run_recursion(const SolverConfig& cfg, const BFamilySpec& family);
SolverRun run_recursion(const SolverConfig& cfg, BHatInput bhat,
                        std::optional<MajorantFamily> majorant = std::nullopt);

/// |C_n(r)/c_n - phi_{n delta}(r)| over the radius grid.
std::vector<double> clt_error_profile(const SolverRun& run, int n);

/// lambda * f_n over the radius grid (envelope side of the error bound,
/// without the unquantified prefactor).
std::vector<double> bound_profile(const SolverRun& run, int n);

/// Per-n sup over the radius grid of error / bound. Radii where the bound has
/// decayed below 1e-14 of its grid maximum are excluded from the sup: there
/// the inverse-transform quadrature noise dominates both sides.
struct RatioReport {
  std::vector<int> n;
  std::vector<double> sup_ratio;
  std::vector<double> l1_error;  // surface-measure quadrature of the error
};
RatioReport ratio_report(const SolverRun& run, const std::vector<int>& n_list);

/// Telescoping defect Delta(k, j) = a_j phi_{k delta} - mu^{-1} a_{j-1}
/// phi_{(k-1) delta + 1} - lambda sum_m a_m a_{j-m} B_m * phi_{(k-m) delta},
/// evaluated as a signed mixture. Returns the empirical constants
///   sup_r sum_{j<=n} |Delta(n,j)(r)| / (lambda f_n(r))       (sum form)
///   max_j sup_r |Delta(j,j)(r)| / (lambda [sum_{s<=j/2} psi_s Gamma_{j-s}
///                                         + (zbar(j)/j) psi_j](r))  (diagonal form)
struct DeltaCheck {
  double sum_constant = 0.0;
  double diag_constant = 0.0;
};
DeltaCheck delta_kj_check(const SolverRun& run, const BFamilySpec& family, int n);

}  // namespace lacewalk
