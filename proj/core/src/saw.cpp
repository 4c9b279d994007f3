#include "lacewalk/saw.hpp"

#include <algorithm>
#include <cmath>

#include "lacewalk/common.hpp"
#include "lacewalk/parallel.hpp"
#include "lacewalk/rng.hpp"
#include "lacewalk/spectral.hpp"

namespace lacewalk {
namespace saw {

void SawParams::validate() const {
  if (dim != 3 && dim != 5 && dim != 7 && dim != 9)
    throw ValidationError("SawParams: odd dim in {3,5,7,9} required");
  if (!(lambda >= 0.0) || lambda > 1.0)
    throw ValidationError("SawParams: lambda in [0, 1] required");
  if (!(rho > 0.0) || rho > 1.0) throw ValidationError("SawParams: rho in (0, 1] required");
  if (n < 1) throw ValidationError("SawParams: n >= 1 required");
  if (n_samples < 1) throw ValidationError("SawParams: n_samples >= 1 required");
}

PathSampler::PathSampler(int dim, int steps, std::uint64_t seed, std::uint32_t purpose)
    : dim_(dim), steps_(steps), seed_(seed), purpose_(purpose) {}

void PathSampler::generate(std::int64_t index, lace::Path& out) const {
  out.dim = dim_;
  out.coords.assign(static_cast<std::size_t>(steps_ + 1) * dim_, 0.0);
  CounterRng rng(seed_, stream_id(purpose_, static_cast<std::uint64_t>(index)));
  for (int i = 1; i <= steps_; ++i) {
    double* cur = out.coords.data() + static_cast<std::size_t>(i) * dim_;
    const double* prev = out.coords.data() + static_cast<std::size_t>(i - 1) * dim_;
    for (int c = 0; c < dim_; ++c) cur[c] = prev[c] + rng.normal();
  }
}

McEstimate estimate_cn(const SawParams& params, std::uint32_t purpose) {
  params.validate();
  const PathSampler sampler(params.dim, params.n, params.seed, purpose);
  const Accum acc = parallel_chunks(
      params.n_samples, 8192, Accum{},
      [&](std::int64_t lo, std::int64_t hi, Accum& a) {
        lace::Path p;
        for (std::int64_t i = lo; i < hi; ++i) {
          sampler.generate(i, p);
          a.add(lace::k_weight(p, 0, params.n, params.lambda, params.rho));
        }
      },
      [](Accum& t, const Accum& p) { t.merge(p); });
  return acc.estimate();
}

std::vector<McEstimate> estimate_cn_prefixes(const SawParams& params, std::uint32_t purpose) {
  params.validate();
  const PathSampler sampler(params.dim, params.n, params.seed, purpose);
  using Partial = std::vector<Accum>;
  const Partial total = parallel_chunks(
      params.n_samples, 8192, Partial(params.n),
      [&](std::int64_t lo, std::int64_t hi, Partial& a) {
        lace::Path p;
        for (std::int64_t i = lo; i < hi; ++i) {
          sampler.generate(i, p);
          double k = 1.0;
          for (int m = 1; m <= params.n; ++m) {
            // extend K[0, m-1] by the pairs (i, m)
            for (int j = 0; j < m; ++j)
              if (p.dist(j, m) <= params.rho) k *= 1.0 - params.lambda;
            a[m - 1].add(k);
          }
        }
      },
      [](Partial& t, const Partial& p) {
        for (std::size_t i = 0; i < t.size(); ++i) t[i].merge(p[i]);
      });
  std::vector<McEstimate> out(params.n);
  for (int m = 0; m < params.n; ++m) out[m] = total[m].estimate();
  return out;
}

PiMoments estimate_pi_moments(const SawParams& params, int m) {
  params.validate();
  if (m < 1 || m > 6) throw ValidationError("estimate_pi_moments: m in [1, 6] required");
  const PathSampler sampler(params.dim, m, params.seed, 10 + static_cast<std::uint32_t>(m));
  struct Partial {
    Accum pi, pi_bar;
  };
  const Partial total = parallel_chunks(
      params.n_samples, 8192, Partial{},
      [&](std::int64_t lo, std::int64_t hi, Partial& a) {
        lace::Path p;
        for (std::int64_t i = lo; i < hi; ++i) {
          sampler.generate(i, p);
          const double j = lace::j_weight_lace(p, m, params.lambda, params.rho);
          const double r = p.dist(0, m);
          a.pi.add(j);
          a.pi_bar.add(j * r * r);
        }
      },
      [](Partial& t, const Partial& p) {
        t.pi.merge(p.pi);
        t.pi_bar.merge(p.pi_bar);
      });
  return PiMoments{total.pi.estimate(), total.pi_bar.estimate()};
}

namespace {

// Omega_d(k_i R) over the nodes; incremental angle rotation when the grid is
// uniform, with the quadratic series under u = 0.01 to dodge cancellation.
void omega_row(int dim, double R, std::span<const double> k, std::vector<double>& out) {
  const double nu1 = 0.5 * dim;  // nu + 1
  out.resize(k.size());
  const bool uniform =
      k.size() > 2 && std::abs((k[1] - k[0]) * (static_cast<double>(k.size()) - 1) -
                               (k.back() - k.front())) < 1e-9 * std::max(1.0, k.back());
  double s = 0.0, c = 1.0, sd = 0.0, cd = 1.0;
  if (uniform) {
    const double step = (k[1] - k[0]) * R;
    sd = std::sin(step);
    cd = std::cos(step);
    const double u0 = k[0] * R;
    s = std::sin(u0);
    c = std::cos(u0);
  }
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double u = k[i] * R;
    double si = s, ci = c;
    if (!uniform) {
      si = std::sin(u);
      ci = std::cos(u);
    }
    if (u < 0.01) {
      out[i] = 1.0 - u * u / (4.0 * nu1);
    } else {
      switch (dim) {
        case 3: out[i] = si / u; break;
        case 5: out[i] = 3.0 * (si - u * ci) / (u * u * u); break;
        case 7: {
          const double u2 = u * u;
          out[i] = 15.0 * ((3.0 - u2) * si - 3.0 * u * ci) / (u2 * u2 * u);
          break;
        }
        default: {  // dim == 9
          const double u2 = u * u;
          out[i] = 105.0 * ((15.0 - 6.0 * u2) * si - (15.0 * u - u2 * u) * ci) / (u2 * u2 * u2 * u);
          break;
        }
      }
    }
    if (uniform) {
      const double sn = s * cd + c * sd;
      c = c * cd - s * sd;
      s = sn;
    }
  }
}

}  // namespace

PiHatEstimate estimate_pi_hat(const SawParams& params, int m, std::span<const double> k_nodes,
                              std::uint32_t purpose_offset) {
  params.validate();
  if (m < 1 || m > 6) throw ValidationError("estimate_pi_hat: m in [1, 6] required");
  const PathSampler sampler(params.dim, m, params.seed,
                            purpose_offset + static_cast<std::uint32_t>(m));
  struct Partial {
    std::vector<Accum> nodes;
    Accum pi, pi_bar;
  };
  Partial init;
  init.nodes.resize(k_nodes.size());
  const Partial total = parallel_chunks(
      params.n_samples, 8192, init,
      [&](std::int64_t lo, std::int64_t hi, Partial& a) {
        lace::Path p;
        std::vector<double> row;
        for (std::int64_t i = lo; i < hi; ++i) {
          sampler.generate(i, p);
          const double j = lace::j_weight_lace(p, m, params.lambda, params.rho);
          const double r = p.dist(0, m);
          a.pi.add(j);
          a.pi_bar.add(j * r * r);
          if (j == 0.0) {
            for (auto& acc : a.nodes) acc.add(0.0);
            continue;
          }
          omega_row(params.dim, r, k_nodes, row);
          for (std::size_t q = 0; q < row.size(); ++q) a.nodes[q].add(j * row[q]);
        }
      },
      [](Partial& t, const Partial& p) {
        for (std::size_t i = 0; i < t.nodes.size(); ++i) t.nodes[i].merge(p.nodes[i]);
        t.pi.merge(p.pi);
        t.pi_bar.merge(p.pi_bar);
      });
  PiHatEstimate out;
  out.k.assign(k_nodes.begin(), k_nodes.end());
  out.value.reserve(k_nodes.size());
  for (const auto& acc : total.nodes) out.value.push_back(acc.estimate());
  out.moments = PiMoments{total.pi.estimate(), total.pi_bar.estimate()};
  return out;
}

DensityEstimate estimate_endpoint_density(const SawParams& params, std::span<const double> radii,
                                          std::uint32_t purpose) {
  params.validate();
  const PathSampler sampler(params.dim, params.n, params.seed, purpose);
  const double h = 0.5 * std::sqrt(static_cast<double>(params.n)) *
                   std::pow(static_cast<double>(params.n_samples), -1.0 / 7.0);
  struct Partial {
    std::vector<double> sa, saa, sab;
    double sb = 0.0, sbb = 0.0;
    std::int64_t n = 0;
  };
  Partial init;
  init.sa.assign(radii.size(), 0.0);
  init.saa.assign(radii.size(), 0.0);
  init.sab.assign(radii.size(), 0.0);
  const Partial total = parallel_chunks(
      params.n_samples, 8192, init,
      [&](std::int64_t lo, std::int64_t hi, Partial& a) {
        lace::Path p;
        for (std::int64_t i = lo; i < hi; ++i) {
          sampler.generate(i, p);
          const double w = lace::k_weight(p, 0, params.n, params.lambda, params.rho);
          const double r = p.dist(0, params.n);
          a.sb += w;
          a.sbb += w * w;
          ++a.n;
          for (std::size_t q = 0; q < radii.size(); ++q) {
            const double u = (r - radii[q]) / h;
            if (std::abs(u) >= 1.0) continue;
            const double kern = 0.75 * (1.0 - u * u) / h;  // Epanechnikov
            const double aq = w * kern;
            a.sa[q] += aq;
            a.saa[q] += aq * aq;
            a.sab[q] += aq * w;
          }
        }
      },
      [](Partial& t, const Partial& p) {
        for (std::size_t q = 0; q < t.sa.size(); ++q) {
          t.sa[q] += p.sa[q];
          t.saa[q] += p.saa[q];
          t.sab[q] += p.sab[q];
        }
        t.sb += p.sb;
        t.sbb += p.sbb;
        t.n += p.n;
      });

  DensityEstimate out;
  out.radii.assign(radii.begin(), radii.end());
  out.bandwidth = h;
  out.value.resize(radii.size());
  const double nn = static_cast<double>(total.n);
  const double b_mean = total.sb / nn;
  const double surface = sphere_surface(params.dim);
  for (std::size_t q = 0; q < radii.size(); ++q) {
    const double geometry = surface * std::pow(radii[q], params.dim - 1);
    const double ratio = total.sa[q] / total.sb;
    // ratio-estimator variance via the influence a_i - ratio * b_i
    const double var_infl = std::max(
        0.0, (total.saa[q] - 2.0 * ratio * total.sab[q] + ratio * ratio * total.sbb) / nn -
                 std::pow(total.sa[q] / nn - ratio * b_mean, 2));
    McEstimate e;
    e.n_samples = total.n;
    e.mean = ratio / geometry;
    e.std_err = std::sqrt(var_infl / std::max(1.0, nn - 1.0)) / (b_mean * geometry);
    out.value[q] = e;
  }
  return out;
}

CrossCheck cross_check_recursion(const SawParams& params, int m_max, RadialGridPtr grid,
                                 std::span<const double> density_radii) {
  params.validate();
  if (m_max < 1 || m_max > 6)
    throw ValidationError("cross_check_recursion: m_max in [1, 6] required");
  if (!grid) grid = RadialGrid::uniform(12.0, 256);

  CrossCheck cc;
  // Independent streams: one per pi_m (purpose 10+m), one per denominator c_m
  // (purpose 20+m), one for the targets and the density (purpose 30).
  for (int m = 1; m <= m_max; ++m) {
    SawParams pm = params;
    pm.n = m;
    cc.pi_hat.push_back(estimate_pi_hat(pm, m, grid->k));
    cc.cn_denominator.push_back(estimate_cn(pm, 20 + static_cast<std::uint32_t>(m)));
  }

  BHatInput bhat;
  bhat.hat.reserve(m_max);
  std::vector<double> sigma_b(m_max);
  for (int m = 1; m <= m_max; ++m) {
    const double pi = cc.pi_hat[m - 1].moments.pi.mean;
    const double pi_se = cc.pi_hat[m - 1].moments.pi.std_err;
    const double pibar = cc.pi_hat[m - 1].moments.pi_bar.mean;
    const double cm = cc.cn_denominator[m - 1].mean;
    const double cm_se = cc.cn_denominator[m - 1].std_err;
    // at lambda = 0 every pi_m vanishes identically and B_m = Pi_m/(lambda c_m)
    // degenerates to the zero kernel
    const double scale = params.lambda > 0.0 ? 1.0 / (params.lambda * cm) : 0.0;
    bhat.b.push_back(pi * scale);
    bhat.bbar.push_back(pibar / params.dim * scale);
    sigma_b[m - 1] = std::sqrt(std::pow(pi_se * scale, 2) +
                               std::pow(pi * cm_se * scale / cm, 2));
    RadialFn f{grid, {}};
    f.v.reserve(grid->size());
    for (const auto& e : cc.pi_hat[m - 1].value) f.v.push_back(e.mean * scale);
    bhat.hat.push_back(std::move(f));
  }
  cc.b = bhat.b;
  cc.bbar = bhat.bbar;

  SolverConfig cfg;
  cfg.dim = params.dim;
  cfg.lambda = params.lambda;
  cfg.n_max = m_max;
  cfg.grid = grid;
  cfg.radii.assign(density_radii.begin(), density_radii.end());
  if (cfg.radii.empty()) cfg.radii = geometric_grid(1.0, 4.0 * std::sqrt(double(m_max)), 8);
  // Indicator kernels transform with algebraic tails, so the strict Gaussian
  // decay guard does not apply to Monte Carlo interaction input; the window
  // truncation sits below the Monte Carlo error at the test radii.
  cfg.decay_tol = 1e-3;
  const SolverRun run = run_recursion(cfg, bhat);
  cc.solver_c = run.sequence().c;
  cc.mu_hat = run.sequence().mu;
  cc.delta_hat = run.sequence().delta;

  // Sensitivities dc_n / db_m by central differences for the error budget.
  const BScalars base{params.lambda, bhat.b, bhat.bbar};
  cc.solver_c_stderr.assign(m_max + 1, 0.0);
  std::vector<std::vector<double>> sens(m_max);  // [m][n]
  for (int m = 1; m <= m_max; ++m) {
    const double step = std::max(sigma_b[m - 1], 1e-9);
    BScalars up = base, dn = base;
    up.b[m - 1] += step;
    dn.b[m - 1] -= step;
    const auto cu = solve_c(up);
    const auto cd = solve_c(dn);
    sens[m - 1].resize(m_max + 1);
    for (int n = 0; n <= m_max; ++n) sens[m - 1][n] = (cu[n] - cd[n]) / (2.0 * step);
  }
  for (int n = 1; n <= m_max; ++n) {
    double var = 0.0;
    for (int m = 1; m <= m_max; ++m)
      var += std::pow(sens[m - 1][n] * sigma_b[m - 1], 2);
    cc.solver_c_stderr[n] = std::sqrt(var);
  }

  SawParams pt = params;
  pt.n = m_max;
  cc.cn_target = estimate_cn_prefixes(pt, 30);
  cc.z_cn.assign(m_max + 1, 0.0);
  for (int n = 1; n <= m_max; ++n) {
    const auto& tgt = cc.cn_target[n - 1];
    const double diff = cc.solver_c[n] - tgt.mean;
    const double se = std::sqrt(std::pow(cc.solver_c_stderr[n], 2) + std::pow(tgt.std_err, 2));
    cc.z_cn[n] = se > 0.0 ? diff / se : (diff == 0.0 ? 0.0 : 1e300);
    cc.max_abs_z = std::max(cc.max_abs_z, std::abs(cc.z_cn[n]));
  }

  cc.density_mc = estimate_endpoint_density(pt, cfg.radii, 30);
  cc.density_solver.resize(cfg.radii.size());
  cc.z_density.resize(cfg.radii.size());
  const double inv_cn = 1.0 / cc.solver_c[m_max];
  const double h = cc.density_mc.bandwidth;
  const double surface = sphere_surface(params.dim);
  for (std::size_t q = 0; q < cfg.radii.size(); ++q) {
    const double r = cfg.radii[q];
    cc.density_solver[q] = run.density(m_max, r) * inv_cn;
    // Epanechnikov smoothing bias (h^2 / 10) g'' of the radial pdf
    // g(r) = S r^{d-1} f(r), estimated from the solver profile.
    auto g = [&](double rr) {
      return surface * std::pow(rr, params.dim - 1) * run.density(m_max, rr) * inv_cn;
    };
    const double g2 = (g(r + h) - 2.0 * g(r) + g(std::max(0.5 * h, r - h))) / (h * h);
    const double bias = std::abs(h * h / 10.0 * g2) / (surface * std::pow(r, params.dim - 1));
    const double se =
        std::sqrt(std::pow(cc.density_mc.value[q].std_err, 2) + bias * bias);
    cc.z_density[q] = (cc.density_solver[q] - cc.density_mc.value[q].mean) / se;
  }
  return cc;
}

}  // namespace saw
}  // namespace lacewalk
