#include "lacewalk/bfamily.hpp"

#include <cmath>

#include "lacewalk/common.hpp"

namespace lacewalk {

namespace {

BFamilySpec from_majorant(MajorantFamily majorant, int dim, int n_max, std::string name) {
  BFamilySpec spec;
  spec.dim = dim;
  spec.name = std::move(name);
  spec.b.resize(n_max);
  spec.bbar.resize(n_max);
  for (int n = 1; n <= n_max; ++n) {
    spec.b[n - 1] = majorant.moment(n, 0);
    spec.bbar[n - 1] = majorant.moment(n, 1) / dim;
  }
  spec.generate = [majorant](int n) { return majorant.gamma(n); };
  spec.majorant = std::move(majorant);
  return spec;
}

}  // namespace

BFamilySpec power_law_family(double a, int dim, int n_max) {
  return from_majorant(MajorantFamily::power_law(a, dim), dim, n_max, "power_law");
}

BFamilySpec saw_majorant_family(double K, int dim, int n_max) {
  return from_majorant(MajorantFamily::saw(K, dim), dim, n_max, "saw_majorant");
}

BFamilySpec single_mode_family(double beta, double t, int dim, int n_max) {
  if (!(t > 0.0)) throw ValidationError("single_mode_family: t > 0 required");
  BFamilySpec spec;
  spec.dim = dim;
  spec.name = "single_mode";
  spec.b.assign(n_max, 0.0);
  spec.bbar.assign(n_max, 0.0);
  spec.b[0] = beta;
  spec.bbar[0] = beta * t;
  spec.generate = [beta, t, dim](int n) {
    if (n == 1) return GaussianMixture::gaussian(dim, t, beta);
    return GaussianMixture(dim, {});
  };
  return spec;
}

BFamilySpec scalar_family(std::vector<double> b, std::vector<double> bbar, int dim) {
  BFamilySpec spec;
  spec.dim = dim;
  spec.name = "scalar";
  spec.b = std::move(b);
  spec.bbar = std::move(bbar);
  return spec;
}

double domination_ratio(const BFamilySpec& family, int n_max, std::span<const double> radii) {
  if (!family.majorant) throw ValidationError("domination_ratio: family has no envelope");
  if (!family.generate) throw ValidationError("domination_ratio: family has no mixtures");
  double worst = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const GaussianMixture bn = family.generate(n);
    if (bn.terms().empty()) continue;
    const GaussianMixture gn = family.majorant->gamma(n);
    for (double r : radii) {
      const double denom = gn.value(r);
      if (denom > 0.0) worst = std::max(worst, bn.abs_value(r) / denom);
    }
  }
  return worst;
}

}  // namespace lacewalk
