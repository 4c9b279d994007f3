#include "lacewalk/gaussian_mixture.hpp"

#include <algorithm>
#include <cmath>

#include "lacewalk/common.hpp"

namespace lacewalk {

double gaussian_radial(int dim, double t, double r) {
  return std::pow(2.0 * kPi * t, -0.5 * dim) * std::exp(-0.5 * r * r / t);
}

GaussianMixture::GaussianMixture(int dim, std::vector<MixtureTerm> terms)
    : dim_(dim), terms_(std::move(terms)) {
  if (dim_ < 1) throw ValidationError("GaussianMixture: dim >= 1 required");
  for (const auto& t : terms_)
    if (!(t.var > 0.0)) throw ValidationError("GaussianMixture: variance scale must be > 0");
}

GaussianMixture GaussianMixture::gaussian(int dim, double t, double weight) {
  return GaussianMixture(dim, {{weight, t}});
}

bool GaussianMixture::positive() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const MixtureTerm& t) { return t.weight >= 0.0; });
}

double GaussianMixture::mass() const {
  double m = 0.0;
  for (const auto& t : terms_) m += t.weight;
  return m;
}

double GaussianMixture::abs_mass() const {
  double m = 0.0;
  for (const auto& t : terms_) m += std::abs(t.weight);
  return m;
}

double GaussianMixture::moment(int k) const {
  if (k < 0 || k > 2) throw ValidationError("GaussianMixture::moment: k in {0,1,2}");
  double m = 0.0;
  const double d = dim_;
  for (const auto& t : terms_) {
    switch (k) {
      case 0: m += t.weight; break;
      case 1: m += t.weight * d * t.var; break;
      case 2: m += t.weight * d * (d + 2.0) * t.var * t.var; break;
    }
  }
  return m;
}

double GaussianMixture::value(double r) const {
  double v = 0.0;
  for (const auto& t : terms_) v += t.weight * gaussian_radial(dim_, t.var, r);
  return v;
}

double GaussianMixture::hat(double k) const {
  double v = 0.0;
  for (const auto& t : terms_) v += t.weight * std::exp(-0.5 * t.var * k * k);
  return v;
}

GaussianMixture GaussianMixture::convolve(const GaussianMixture& other) const {
  if (other.dim_ != dim_) throw ValidationError("convolve: dimension mismatch");
  std::vector<MixtureTerm> out;
  out.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : other.terms_) out.push_back({a.weight * b.weight, a.var + b.var});
  GaussianMixture result(dim_, std::move(out));
  result.merge_equal_vars();
  return result;
}

GaussianMixture GaussianMixture::scaled(double factor) const {
  std::vector<MixtureTerm> out = terms_;
  for (auto& t : out) t.weight *= factor;
  return GaussianMixture(dim_, std::move(out));
}

GaussianMixture& GaussianMixture::operator+=(const GaussianMixture& other) {
  if (other.dim_ != dim_) throw ValidationError("operator+=: dimension mismatch");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  merge_equal_vars();
  return *this;
}

void GaussianMixture::merge_equal_vars() {
  if (terms_.size() < 2) return;
  std::sort(terms_.begin(), terms_.end(),
            [](const MixtureTerm& a, const MixtureTerm& b) { return a.var < b.var; });
  std::vector<MixtureTerm> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().var == t.var)
      merged.back().weight += t.weight;
    else
      merged.push_back(t);
  }
  terms_ = std::move(merged);
}

void GaussianMixture::prune(double rel_tol) {
  const double scale = abs_mass();
  if (scale == 0.0) return;
  const double cut = rel_tol * scale;
  std::erase_if(terms_, [cut](const MixtureTerm& t) { return std::abs(t.weight) < cut; });
}

}  // namespace lacewalk
