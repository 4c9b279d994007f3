#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lacewalk/lace.hpp"
#include "lacewalk/mc.hpp"
#include "lacewalk/solver.hpp"

namespace lacewalk {
namespace saw {

struct SawParams {
  int dim = 5;
  double lambda = 0.1;
  double rho = 1.0;
  int n = 5;
  std::uint64_t seed = 1;
  std::int64_t n_samples = 100000;

  void validate() const;
};

/// Gaussian-increment path generator; path i is a pure function of
/// (seed, purpose, i), so streams never overlap and results do not depend on
/// the worker count.
class PathSampler {
 public:
  PathSampler(int dim, int steps, std::uint64_t seed, std::uint32_t purpose);
  void generate(std::int64_t index, lace::Path& out) const;

 private:
  int dim_, steps_;
  std::uint64_t seed_;
  std::uint32_t purpose_;
};

/// E[K[0,n]] over Gaussian paths: the walk normalization c_n.
McEstimate estimate_cn(const SawParams& params, std::uint32_t purpose = 0);

/// c_m for every m = 1..n from one path stream (prefix weights).
std::vector<McEstimate> estimate_cn_prefixes(const SawParams& params, std::uint32_t purpose = 0);

/// pi_m = E[J[0,m]] and the second moment E[J[0,m] |x_m|^2]; J is evaluated
/// exactly per path through the lace resummation (m <= 6).
struct PiMoments {
  McEstimate pi;
  McEstimate pi_bar;  // second moment, before the 1/d normalization
};
PiMoments estimate_pi_moments(const SawParams& params, int m);

/// Radial transform profile Pi_m^(k) = E[J[0,m] Omega_d(k |x_m|)] per node;
/// the k = 0 column reproduces pi_m from the same samples.
struct PiHatEstimate {
  std::vector<double> k;
  std::vector<McEstimate> value;
  PiMoments moments;
};
PiHatEstimate estimate_pi_hat(const SawParams& params, int m, std::span<const double> k_nodes,
                              std::uint32_t purpose_offset = 10);

/// Weighted kernel estimate of C_n(x)/c_n at each radius: all samples enter
/// through their endpoint radius with an Epanechnikov kernel of bandwidth
/// h = 0.5 sqrt(n) N^{-1/7}.
struct DensityEstimate {
  std::vector<double> radii;
  std::vector<McEstimate> value;
  double bandwidth = 0.0;
};
DensityEstimate estimate_endpoint_density(const SawParams& params, std::span<const double> radii,
                                          std::uint32_t purpose = 3);

/// Estimates B_m^ = Pi_m^ / (lambda c_m) for m <= m_max from independent
/// streams, feeds them to the frequency recursion, and compares the solver
/// against direct Monte Carlo: z-scores for c_n (error budget via the delta
/// method over the estimated inputs) and for the endpoint density.
struct CrossCheck {
  std::vector<PiHatEstimate> pi_hat;          // m = 1..m_max
  std::vector<McEstimate> cn_denominator;     // per-m c estimates used in B_m^
  std::vector<double> b, bbar;                // estimated scalars
  std::vector<double> solver_c;               // c_n from the recursion, n = 0..m_max
  std::vector<double> solver_c_stderr;        // propagated input uncertainty
  std::vector<McEstimate> cn_target;          // independent MC targets
  std::vector<double> z_cn;                   // per n = 1..m_max
  DensityEstimate density_mc;
  std::vector<double> density_solver;
  std::vector<double> z_density;
  double delta_hat = 1.0;
  double mu_hat = 1.0;
  double max_abs_z = 0.0;
};
CrossCheck cross_check_recursion(const SawParams& params, int m_max, RadialGridPtr grid,
                                 std::span<const double> density_radii);

}  // namespace saw
}  // namespace lacewalk
