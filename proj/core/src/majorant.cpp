#include "lacewalk/majorant.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "lacewalk/common.hpp"

namespace lacewalk {

namespace {

// Gaussian moment of |y|^{2k} for phi_t: 1, d t, d(d+2) t^2.
double plain_moment(int dim, double t, int k) {
  switch (k) {
    case 0: return 1.0;
    case 1: return dim * t;
    default: return dim * (dim + 2.0) * t * t;
  }
}

// int phi_t(x - y) |y|^{2k} g(y) dy at |x| = r, closed form. Per mixture term
// (w, s): phi_t(x-y) phi_s(y) = phi_{t+s}(x) N(y; c x, u) with u = t s/(t+s),
// c = s/(t+s), and E|Z + c x|^{2k} in closed form.
double smoothed_moment_value(double t, const GaussianMixture& g, int k, double r) {
  const int d = g.dim();
  double total = 0.0;
  for (const auto& term : g.terms()) {
    const double s = term.var;
    const double u = t * s / (t + s);
    const double c = s / (t + s);
    const double base = term.weight * gaussian_radial(d, t + s, r);
    const double m2 = c * c * r * r;
    double factor = 1.0;
    if (k == 1) factor = m2 + d * u;
    if (k == 2) factor = m2 * m2 + (2.0 * d + 4.0) * m2 * u + d * (d + 2.0) * u * u;
    total += base * factor;
  }
  return total;
}

std::vector<double> report_radius_grid(int n_max) {
  return geometric_grid(1e-2, 10.0 * std::sqrt(static_cast<double>(n_max)), 64);
}

}  // namespace

MajorantFamily::MajorantFamily(Kind k, double p, int dim) : kind_(k), param_(p), dim_(dim) {
  if (dim_ < 1) throw ValidationError("MajorantFamily: dim >= 1 required");
  if (!(param_ > 0.0)) throw ValidationError("MajorantFamily: parameter must be > 0");
}

MajorantFamily MajorantFamily::power_law(double a, int dim) {
  return MajorantFamily(Kind::PowerLaw, a, dim);
}

MajorantFamily MajorantFamily::saw(double K, int dim) {
  MajorantFamily f(Kind::Saw, K, dim);
  f.fit_chi_constant();
  return f;
}

std::string MajorantFamily::name() const {
  return kind_ == Kind::PowerLaw ? "power_law" : "saw_majorant";
}

GaussianMixture MajorantFamily::gamma(int n) const {
  if (n < 1) throw ValidationError("MajorantFamily::gamma: n >= 1 required");
  if (kind_ == Kind::PowerLaw)
    return GaussianMixture::gaussian(dim_, 0.5 * n, std::pow(n, -param_));
  std::vector<MixtureTerm> terms;
  terms.reserve(n);
  const double scale = param_ * std::pow(n, -0.5 * dim_);
  for (int k = 1; k <= n; ++k)
    terms.push_back({scale * std::pow(k, 1.0 - 0.5 * dim_), 0.4 * k});
  return GaussianMixture(dim_, std::move(terms));
}

double MajorantFamily::moment(int n, int k) const {
  if (n < 1) throw ValidationError("MajorantFamily::moment: n >= 1 required");
  if (kind_ == Kind::PowerLaw)
    return std::pow(n, -param_) * plain_moment(dim_, 0.5 * n, k);
  double s = 0.0;
  for (int j = 1; j <= n; ++j)
    s += std::pow(j, 1.0 - 0.5 * dim_) * plain_moment(dim_, 0.4 * j, k);
  return param_ * std::pow(n, -0.5 * dim_) * s;
}

std::vector<double> MajorantFamily::moment_table(int k, int n_max) const {
  std::vector<double> out(n_max + 1, 0.0);
  if (kind_ == Kind::PowerLaw) {
    for (int n = 1; n <= n_max; ++n)
      out[n] = std::pow(n, -param_) * plain_moment(dim_, 0.5 * n, k);
    return out;
  }
  double prefix = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    prefix += std::pow(n, 1.0 - 0.5 * dim_) * plain_moment(dim_, 0.4 * n, k);
    out[n] = param_ * std::pow(n, -0.5 * dim_) * prefix;
  }
  return out;
}

double MajorantFamily::chi(int m, int n) const {
  if (m < 1 || n < 1) throw ValidationError("chi: m, n >= 1 required");
  const double shape = static_cast<double>(m + n) / (static_cast<double>(m) * n);
  if (kind_ == Kind::PowerLaw) return std::pow(shape, param_);
  return chi_constant_ * std::pow(shape, 0.5 * dim_);
}

void MajorantFamily::fit_chi_constant() {
  // Envelope convolutions stay within a fixed multiple of the algebraic
  // shape ((m+n)/(mn))^{d/2}; the prefactor is fitted once per family.
  const auto radii = report_radius_grid(48);
  double worst = 0.0;
  for (int m = 1; m <= 24; ++m) {
    for (int n = m; n <= 24; ++n) {
      const GaussianMixture conv = gamma(m).convolve(gamma(n));
      const GaussianMixture target = gamma(m + n);
      const double shape = std::pow(static_cast<double>(m + n) / (static_cast<double>(m) * n),
                                    0.5 * dim_);
      for (double r : radii) {
        const double denom = shape * target.value(r);
        if (denom > 0.0) worst = std::max(worst, conv.value(r) / denom);
      }
    }
  }
  chi_constant_ = worst * (1.0 + 1e-9);
}

double clt_rate(int dim, int n) {
  if (dim < 5) throw ValidationError("clt_rate: dim >= 5 required");
  if (n < 1) throw ValidationError("clt_rate: n >= 1 required");
  if (dim == 5) return 1.0 / std::sqrt(static_cast<double>(n));
  if (dim == 6) return std::log(static_cast<double>(n)) / n;
  return 1.0 / n;
}

GaussianMixture psi_mixture(int dim, double delta, double eps, double n) {
  if (!(delta > 0.0) || !(eps >= 0.0) || !(n > 0.0))
    throw ValidationError("psi_mixture: need delta > 0, eps >= 0, n > 0");
  return GaussianMixture::gaussian(dim, n * delta * (1.0 + eps));
}

ZetaTable make_zeta_table(const MajorantFamily& family, int n_max, int horizon) {
  if (n_max < 1) throw ValidationError("make_zeta_table: n_max >= 1");
  ZetaTable z;
  z.n_max = n_max;
  z.horizon = horizon > 0 ? std::max(horizon, n_max) : std::max(16384, 8 * n_max);
  const auto g0 = family.moment_table(0, z.horizon);
  const auto g1 = family.moment_table(1, z.horizon);
  const auto g2 = family.moment_table(2, z.horizon);

  z.zeta1.assign(n_max + 1, 0.0);
  double prefix1 = 0.0;
  for (int m = 1; m <= n_max; ++m) {
    prefix1 += static_cast<double>(m) * m * g0[m] + m * g1[m] + g2[m];
    z.zeta1[m] = 1.0 + prefix1;
  }

  // suffix sums of gamma^{(1)}(m) + m gamma^{(0)}(m) down from the horizon
  std::vector<double> suffix(z.horizon + 2, 0.0);
  for (int m = z.horizon; m >= 1; --m)
    suffix[m] = suffix[m + 1] + g1[m] + static_cast<double>(m) * g0[m];
  z.zeta2_tail_term = g1[z.horizon] + static_cast<double>(z.horizon) * g0[z.horizon];
  z.zeta2.assign(n_max + 1, 0.0);
  for (int n = 1; n <= n_max; ++n) z.zeta2[n] = suffix[n];

  z.zbar.assign(n_max + 1, 0.0);
  double s1 = 0.0, s2 = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    s1 += z.zeta1[n];
    s2 += z.zeta2[n];
    const double dn = n;
    z.zbar[n] = s1 / (dn * dn) + s2 / dn;
  }
  return z;
}

namespace {

GaussianMixture envelope_profile(const MajorantFamily& family, const ZetaTable& zeta,
                                 double delta, double eps, int n, bool weight_by_s) {
  if (n < 1 || n > zeta.n_max)
    throw ValidationError("envelope profile: n out of the zeta table range");
  std::vector<MixtureTerm> terms;
  for (int s = 1; s <= n / 2; ++s) {
    const double shift = s * delta * (1.0 + eps);
    const double w = weight_by_s ? static_cast<double>(s) : 1.0;
    const GaussianMixture g = family.gamma(n - s);
    for (const auto& t : g.terms()) terms.push_back({w * t.weight, t.var + shift});
  }
  const double top = weight_by_s ? zeta.zbar[n] : zeta.zbar[n] / n;
  terms.push_back({top, n * delta * (1.0 + eps)});
  GaussianMixture out(family.dim(), std::move(terms));
  out.merge_equal_vars();
  out.prune(1e-15);
  return out;
}

}  // namespace

GaussianMixture f_profile(const MajorantFamily& family, const ZetaTable& zeta, double delta,
                          double eps, int n) {
  return envelope_profile(family, zeta, delta, eps, n, true);
}

GaussianMixture kappa_profile(const MajorantFamily& family, const ZetaTable& zeta, double delta,
                              double eps, int n) {
  return envelope_profile(family, zeta, delta, eps, n, false);
}

LeMainResult le_main_check(const MajorantFamily& family, double delta, double eps, int n_max,
                           std::span<const double> radii) {
  const ZetaTable zeta = make_zeta_table(family, n_max);
  std::vector<GaussianMixture> f, kappa;
  f.reserve(n_max + 1);
  kappa.reserve(n_max + 1);
  f.push_back(GaussianMixture(family.dim(), {}));  // placeholder; f_0 is the point mass
  kappa.push_back(GaussianMixture(family.dim(), {}));
  for (int n = 1; n <= n_max; ++n) {
    f.push_back(f_profile(family, zeta, delta, eps, n));
    kappa.push_back(kappa_profile(family, zeta, delta, eps, n));
  }

  LeMainResult result;
  result.per_n.assign(n_max + 1, 0.0);
  for (int n = 1; n <= n_max; ++n) {
    GaussianMixture lhs = kappa[n];  // j = n term: kappa(n) * f_0
    for (int j = 1; j < n; ++j) {
      GaussianMixture prod = kappa[j].convolve(f[n - j]);
      prod.prune(1e-15);
      lhs += prod;
    }
    lhs.prune(1e-15);
    double sup = 0.0;
    for (double r : radii) {
      const double denom = f[n].value(r);
      if (denom > 0.0) sup = std::max(sup, lhs.value(r) / denom);
    }
    result.per_n[n] = sup;
    result.constant = std::max(result.constant, sup);
  }
  return result;
}

namespace {

double b1_sum(const MajorantFamily& family, int n) {
  double s = 0.0;
  for (int j = 1; j < n; ++j)
    s += std::min(j, n - j) * family.chi(j, n - j);
  return s;
}

double b2_sup(const MajorantFamily& family, int t_max, const std::vector<double>& radii) {
  double sup = 0.0;
  for (int t = 1; t <= t_max; ++t) {
    const GaussianMixture target = family.gamma(2 * t);
    for (int s = t; s <= 2 * t; ++s) {
      const GaussianMixture gs = family.gamma(s);
      for (double r : radii) {
        const double denom = target.value(r);
        if (denom > 0.0) sup = std::max(sup, gs.value(r) / denom);
      }
    }
  }
  return sup;
}

double b3_sup(const MajorantFamily& family, int m_max, const std::vector<double>& radii) {
  double sup = 0.0;
  const double t_mults[] = {1.0, 1.5, 2.0, 4.0};
  for (int m = 1; m <= m_max; m = (m < 4 ? m + 1 : 2 * m)) {
    const GaussianMixture gm = family.gamma(m);
    for (double mult : t_mults) {
      const double t = mult * m;
      for (int k = 0; k <= 2; ++k) {
        const double scale = family.moment(m, k);
        for (double r : radii) {
          const double denom = scale * gaussian_radial(family.dim(), t + m, r);
          if (denom > 0.0)
            sup = std::max(sup, smoothed_moment_value(t, gm, k, r) / denom);
        }
      }
    }
  }
  return sup;
}

}  // namespace

ConditionReport condition_report(const MajorantFamily& family, int n_max) {
  if (n_max < 4) throw ValidationError("condition_report: n_max >= 4 required");
  ConditionReport rep;
  const auto radii = report_radius_grid(n_max);

  // B1: partial sums of (s ^ (n-s)) chi_n(s) plus a pointwise spot check.
  double k1_half = 0.0, k1_full = 0.0;
  for (int n = 2; n <= n_max; ++n) {
    const double s = b1_sum(family, n);
    if (n <= n_max / 2) k1_half = std::max(k1_half, s);
    k1_full = std::max(k1_full, s);
  }
  rep.k1 = k1_full;
  rep.b1_growth = k1_half > 0.0 ? k1_full / k1_half : 1.0;
  bool pointwise_ok = true;
  const int pairs[] = {1, 2, 3, 4, 6, 8, 12, 16};
  for (int m : pairs) {
    for (int n : pairs) {
      if (m + n > std::max(n_max, 32)) continue;
      const GaussianMixture conv = family.gamma(m).convolve(family.gamma(n));
      const GaussianMixture target = family.gamma(m + n).scaled(family.chi(m, n));
      for (double r : radii)
        if (conv.value(r) > target.value(r) * (1.0 + 1e-9)) pointwise_ok = false;
    }
  }
  rep.b1_ok = pointwise_ok && rep.b1_growth < 1.3;
  if (!rep.b1_ok) rep.violations.push_back("B1");

  // B2: Gamma_s <= K2 Gamma_{2t} for t <= s <= 2t.
  const double k2_half = b2_sup(family, std::max(1, n_max / 4), radii);
  rep.k2 = b2_sup(family, std::max(1, n_max / 2), radii);
  rep.b2_ok = k2_half > 0.0 && rep.k2 / k2_half < 1.3;
  if (!rep.b2_ok) rep.violations.push_back("B2");

  // B3: smoothed moments against gamma^{(k)}(m) phi_{t+m}.
  const double k3_half = b3_sup(family, std::max(1, n_max / 4), radii);
  rep.k3 = b3_sup(family, std::max(1, n_max / 2), radii);
  rep.b3_ok = k3_half > 0.0 && rep.k3 / k3_half < 1.3;
  if (!rep.b3_ok) rep.violations.push_back("B3");

  // B4: the three moment series with last-term tails and a decay-slope flag.
  const auto g0 = family.moment_table(0, n_max);
  const auto g1 = family.moment_table(1, n_max);
  const auto g2 = family.moment_table(2, n_max);
  double slope = 1e9;
  auto series = [&](auto term) {
    double sum = 0.0;
    for (int n = 1; n <= n_max; ++n) sum += term(n);
    const double t_half = term(n_max / 2), t_full = term(n_max);
    if (t_full > 0.0 && t_half > 0.0) slope = std::min(slope, std::log2(t_half / t_full));
    return sum;
  };
  rep.k4 = series([&](int n) { return n * g0[n]; });
  rep.k4_tail = n_max * g0[n_max];
  rep.k5 = series([&](int n) { return g1[n]; });
  rep.k5_tail = g1[n_max];
  rep.k6 = series([&](int n) { return g2[n] / n; });
  rep.k6_tail = g2[n_max] / n_max;
  rep.b4_slope = slope;
  rep.b4_ok = slope > 1.1;
  if (!rep.b4_ok) rep.violations.push_back("B4");

  return rep;
}

std::string to_json_string(const ConditionReport& report) {
  nlohmann::ordered_json j{{"k1", report.k1},
                           {"k2", report.k2},
                           {"k3", report.k3},
                           {"k4", report.k4},
                           {"k5", report.k5},
                           {"k6", report.k6},
                           {"violations", report.violations},
                           {"tails",
                            {{"k4", report.k4_tail}, {"k5", report.k5_tail},
                             {"k6", report.k6_tail}}},
                           {"diagnostics",
                            {{"b1_growth", report.b1_growth}, {"b4_slope", report.b4_slope}}}};
  return j.dump(2);
}

}  // namespace lacewalk
