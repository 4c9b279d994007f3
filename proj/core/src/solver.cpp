#include "lacewalk/solver.hpp"

#include <cmath>

#include "lacewalk/common.hpp"

namespace lacewalk {

BHatInput make_bhat(const BFamilySpec& family, int n_max, const RadialGridPtr& grid) {
  if (!family.generate) throw ValidationError("make_bhat: family has no mixture generator");
  if (family.n_max() < n_max) throw ValidationError("make_bhat: family shorter than n_max");
  BHatInput out;
  out.b.assign(family.b.begin(), family.b.begin() + n_max);
  out.bbar.assign(family.bbar.begin(), family.bbar.begin() + n_max);
  out.hat.reserve(n_max);
  for (int m = 1; m <= n_max; ++m) out.hat.push_back(mixture_hat(family.generate(m), grid));
  return out;
}

void SolverConfig::validate() const {
  if (dim != 3 && dim != 5 && dim != 7 && dim != 9)
    throw ValidationError("SolverConfig: odd dim in {3,5,7,9} required");
  if (!(lambda >= 0.0) || lambda >= 1.0)
    throw ValidationError("SolverConfig: lambda in [0, 1) required");
  if (!(epsilon > 0.0)) throw ValidationError("SolverConfig: epsilon > 0 required");
  if (n_max < 1) throw ValidationError("SolverConfig: n_max >= 1 required");
}

SolverRun::SolverRun(SolverConfig cfg, BHatInput bhat, std::optional<MajorantFamily> majorant)
    : cfg_(std::move(cfg)), bhat_(std::move(bhat)), majorant_(std::move(majorant)) {
  cfg_.validate();
  if (bhat_.n_max() < cfg_.n_max)
    throw ValidationError("SolverRun: interaction family shorter than n_max");
  if (!cfg_.grid) cfg_.grid = RadialGrid::uniform(12.0, 2048);
  for (const auto& h : bhat_.hat)
    if (h.grid != cfg_.grid) throw ValidationError("SolverRun: B_m^ not on the shared grid");

  seq_ = solve_sequence(BScalars{cfg_.lambda, bhat_.b, bhat_.bbar});

  if (cfg_.radii.empty()) {
    const double sigma = std::sqrt(cfg_.n_max * seq_.delta * (1.0 + cfg_.epsilon));
    cfg_.radii = geometric_grid(1e-2, 8.0 * sigma, 64);
  }

  const RadialGrid& g = *cfg_.grid;
  const int nodes = g.size();
  std::vector<double> decay(nodes);
  for (int i = 0; i < nodes; ++i) decay[i] = std::exp(-0.5 * g.k[i] * g.k[i]);

  c_hat_.resize(cfg_.n_max + 1);
  c_hat_[0] = RadialFn{cfg_.grid, std::vector<double>(nodes, 1.0)};
  for (int n = 1; n <= cfg_.n_max; ++n) {
    RadialFn f{cfg_.grid, std::vector<double>(nodes)};
    for (int i = 0; i < nodes; ++i) {
      double acc = c_hat_[n - 1].v[i] * decay[i];
      for (int m = 1; m <= n; ++m)
        acc += cfg_.lambda * seq_.c[m] * bhat_.hat[m - 1].v[i] * c_hat_[n - m].v[i];
      f.v[i] = acc;
    }
    c_hat_[n] = std::move(f);
  }

  if (majorant_) zeta_ = make_zeta_table(*majorant_, std::max(2, cfg_.n_max));
  if (majorant_ && majorant_->kind() == MajorantFamily::Kind::Saw)
    envelope_scale_ok_ = seq_.delta * (1.0 + cfg_.epsilon) >= 0.8;
}

const ZetaTable& SolverRun::zeta() const {
  if (!zeta_) throw ValidationError("SolverRun: no envelope family declared");
  return *zeta_;
}

double SolverRun::density(int n, double radius) const {
  return inverse_radial(c_hat_.at(n), radius, cfg_.dim, cfg_.decay_tol);
}

std::vector<double> SolverRun::density_profile(int n) const {
  std::vector<double> out(cfg_.radii.size());
  for (std::size_t i = 0; i < cfg_.radii.size(); ++i) out[i] = density(n, cfg_.radii[i]);
  return out;
}

double SolverRun::recursion_residual() const {
  const RadialGrid& g = *cfg_.grid;
  double worst = 0.0;
  for (int n = 1; n <= cfg_.n_max; ++n) {
    for (int i = 0; i < g.size(); ++i) {
      double acc = c_hat_[n - 1].v[i] * std::exp(-0.5 * g.k[i] * g.k[i]);
      for (int m = 1; m <= n; ++m)
        acc += cfg_.lambda * seq_.c[m] * bhat_.hat[m - 1].v[i] * c_hat_[n - m].v[i];
      const double r = std::abs(c_hat_[n].v[i] - acc) / std::max(1.0, std::abs(c_hat_[n].v[i]));
      worst = std::max(worst, r);
    }
  }
  return worst;
}

SolverRun run_recursion(const SolverConfig& cfg, const BFamilySpec& family) {
  SolverConfig c = cfg;
  if (!c.grid) c.grid = RadialGrid::uniform(12.0, 2048);
  if (family.dim != c.dim) throw ValidationError("run_recursion: dimension mismatch");
  return SolverRun(c, make_bhat(family, c.n_max, c.grid), family.majorant);
}

SolverRun run_recursion(const SolverConfig& cfg, BHatInput bhat,
                        std::optional<MajorantFamily> majorant) {
  return SolverRun(cfg, std::move(bhat), std::move(majorant));
}

std::vector<double> clt_error_profile(const SolverRun& run, int n) {
  const auto& cfg = run.config();
  const auto& seq = run.sequence();
  std::vector<double> out(cfg.radii.size());
  const double inv_cn = 1.0 / seq.c[n];
  for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
    const double r = cfg.radii[i];
    out[i] = std::abs(run.density(n, r) * inv_cn - gaussian_radial(cfg.dim, n * seq.delta, r));
  }
  return out;
}

std::vector<double> bound_profile(const SolverRun& run, int n) {
  const auto& cfg = run.config();
  if (!run.majorant()) throw ValidationError("bound_profile: no envelope family declared");
  const GaussianMixture f =
      f_profile(*run.majorant(), run.zeta(), run.sequence().delta, cfg.epsilon, n);
  std::vector<double> out(cfg.radii.size());
  for (std::size_t i = 0; i < cfg.radii.size(); ++i)
    out[i] = cfg.lambda * f.value(cfg.radii[i]);
  return out;
}

RatioReport ratio_report(const SolverRun& run, const std::vector<int>& n_list) {
  const auto& cfg = run.config();
  RatioReport rep;
  rep.n = n_list;
  const double surface = sphere_surface(cfg.dim);
  for (int n : n_list) {
    const auto err = clt_error_profile(run, n);
    const auto bnd = bound_profile(run, n);
    double peak = 0.0;
    for (double b : bnd) peak = std::max(peak, b);
    const double floor = 1e-14 * peak;
    double sup = 0.0;
    for (std::size_t i = 0; i < err.size(); ++i)
      if (bnd[i] > floor) sup = std::max(sup, err[i] / bnd[i]);
    rep.sup_ratio.push_back(sup);

    // trapezoid in r with surface measure S_{d-1} r^{d-1} dr
    double l1 = 0.0;
    for (std::size_t i = 0; i + 1 < err.size(); ++i) {
      const double r0 = cfg.radii[i], r1 = cfg.radii[i + 1];
      const double f0 = surface * std::pow(r0, cfg.dim - 1) * err[i];
      const double f1 = surface * std::pow(r1, cfg.dim - 1) * err[i + 1];
      l1 += 0.5 * (f0 + f1) * (r1 - r0);
    }
    rep.l1_error.push_back(l1);
  }
  return rep;
}

DeltaCheck delta_kj_check(const SolverRun& run, const BFamilySpec& family, int n) {
  const auto& cfg = run.config();
  if (!family.generate) throw ValidationError("delta_kj_check: family has no mixtures");
  if (!run.majorant()) throw ValidationError("delta_kj_check: no envelope family declared");
  const auto& seq = run.sequence();
  const double lambda = cfg.lambda;
  const double delta = seq.delta;
  const double inv_mu = 1.0 / seq.mu;

  // Delta(k, j) as a signed mixture; the m = k term has vanishing Gaussian
  // part and contributes B_m itself (point-mass convolution).
  auto build_delta = [&](int k, int j) {
    std::vector<MixtureTerm> terms;
    terms.push_back({seq.a[j], k * delta});
    terms.push_back({-inv_mu * seq.a[j - 1], (k - 1) * delta + 1.0});
    for (int m = 1; m <= j; ++m) {
      const double w = -lambda * seq.a[m] * seq.a[j - m];
      const double shift = (k - m) * delta;
      const GaussianMixture bm = family.generate(m);
      for (const auto& t : bm.terms()) terms.push_back({w * t.weight, t.var + shift});
    }
    GaussianMixture out(cfg.dim, std::move(terms));
    out.merge_equal_vars();
    return out;
  };

  DeltaCheck check;
  const GaussianMixture fn = f_profile(*run.majorant(), run.zeta(), delta, cfg.epsilon, n);

  std::vector<double> abs_sum(cfg.radii.size(), 0.0);
  for (int j = 1; j <= n; ++j) {
    const GaussianMixture d = build_delta(n, j);
    for (std::size_t i = 0; i < cfg.radii.size(); ++i) abs_sum[i] += d.abs_value(cfg.radii[i]);
  }
  for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
    const double denom = lambda > 0.0 ? lambda * fn.value(cfg.radii[i]) : 1.0;
    if (denom > 0.0) check.sum_constant = std::max(check.sum_constant, abs_sum[i] / denom);
  }

  for (int j = 1; j <= n; ++j) {
    const GaussianMixture d = build_delta(j, j);
    GaussianMixture envelope =
        kappa_profile(*run.majorant(), run.zeta(), delta, cfg.epsilon, j);
    envelope += run.majorant()->gamma(j);  // the s = 0 term of the diagonal bound
    for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
      const double denom =
          lambda > 0.0 ? lambda * envelope.value(cfg.radii[i]) : 1.0;
      if (denom > 0.0)
        check.diag_constant = std::max(check.diag_constant, d.abs_value(cfg.radii[i]) / denom);
    }
  }
  return check;
}

}  // namespace lacewalk
