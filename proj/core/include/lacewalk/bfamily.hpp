#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>

#include "lacewalk/gaussian_mixture.hpp"
#include "lacewalk/majorant.hpp"
#include "lacewalk/sequence.hpp"

namespace lacewalk {

/// Interaction family: a generator of signed mixtures B_n together with the
/// derived scalars b_n = mass(B_n), bbar_n = moment_1(B_n)/d and an optional
/// dominating envelope family.
struct BFamilySpec {
  int dim = 5;
  std::string name = "custom";
  std::function<GaussianMixture(int n)> generate;  // may be empty (scalar-only family)
  std::vector<double> b;
  std::vector<double> bbar;
  std::optional<MajorantFamily> majorant;

  int n_max() const { return static_cast<int>(b.size()); }
  BScalars scalars(double lambda) const { return BScalars{lambda, b, bbar}; }
};

/// B_n = Gamma_n = n^{-a} phi_{n/2}.
BFamilySpec power_law_family(double a, int dim, int n_max);

/// B_n = Gamma_n = K n^{-d/2} sum_k k^{1-d/2} phi_{2k/5}.
BFamilySpec saw_majorant_family(double K, int dim, int n_max);

/// B_1 = beta phi_t, B_n = 0 for n >= 2.
BFamilySpec single_mode_family(double beta, double t, int dim, int n_max);

/// Family from explicit scalars only (no mixtures, no envelope).
BFamilySpec scalar_family(std::vector<double> b, std::vector<double> bbar, int dim);

/// Max over the radius grid and n <= n_max of |B_n(r)| / Gamma_n(r).
/// <= 1 means the declared envelope dominates pointwise on the grid.
double domination_ratio(const BFamilySpec& family, int n_max, std::span<const double> radii);

}  // namespace lacewalk
