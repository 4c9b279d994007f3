// Acceptance suite: one quantitative criterion per section, each printed as a
// single PASS/FAIL line with the measured numbers. Exit code = failure count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "lacewalk/bfamily.hpp"
#include "lacewalk/common.hpp"
#include "lacewalk/lace.hpp"
#include "lacewalk/majorant.hpp"
#include "lacewalk/saw.hpp"
#include "lacewalk/sequence.hpp"
#include "lacewalk/solver.hpp"

using namespace lacewalk;

namespace {

int g_failures = 0;

class Criterion {
 public:
  Criterion(int id, std::string label)
      : id_(id), label_(std::move(label)), start_(std::chrono::steady_clock::now()) {}

  void result(bool ok, const std::string& detail) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::printf("[%s] criterion %2d: %s  --  %s  (%.1f s)\n", ok ? "PASS" : "FAIL", id_,
                label_.c_str(), detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++g_failures;
  }

 private:
  int id_;
  std::string label_;
  std::chrono::steady_clock::time_point start_;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. free-walk exactness: C_n/c_n recovers phi_n through the full pipeline
void criterion_1() {
  Criterion c(1, "free walk exactness, n <= 64, d = 5");
  SolverConfig cfg;
  cfg.dim = 5;
  cfg.lambda = 0.0;
  cfg.n_max = 64;
  const SolverRun run = run_recursion(cfg, power_law_family(2.5, 5, 64));
  double sup = 0.0;
  for (int n = 1; n <= 64; ++n) {
    for (double r : run.config().radii)
      sup = std::max(sup,
                     std::abs(run.density(n, r) / run.sequence().c[n] -
                              gaussian_radial(5, static_cast<double>(n), r)));
  }
  const auto& s = run.sequence();
  const double norm_err = std::max({std::abs(s.mu - 1.0), std::abs(s.delta - 1.0),
                                    std::abs(s.alpha - 1.0)});
  c.result(sup < 1e-9 && norm_err < 1e-14,
           fmt("sup|C_n/c_n - phi_n| = %.3e (< 1e-9), |mu,delta,alpha - 1| = %.3e (< 1e-14)",
               sup, norm_err));
}

// 2. the mass column of the frequency recursion reproduces the scalar solve
void criterion_2() {
  Criterion c(2, "scalar/spectral consistency, n <= 128");
  SolverConfig cfg;
  cfg.dim = 5;
  cfg.lambda = 0.02;
  cfg.n_max = 128;
  const SolverRun run = run_recursion(cfg, power_law_family(2.5, 5, 128));
  double worst = 0.0;
  for (int n = 0; n <= 128; ++n) {
    const double cn = run.sequence().c[n];
    worst = std::max(worst, std::abs(run.c_hat()[n].at0() - cn) / std::abs(cn));
  }
  c.result(worst < 1e-12, fmt("max relative |C_n^(0) - c_n| = %.3e (< 1e-12)", worst));
}

// 3. normalization identities and fitted-constant stability under doubling
void criterion_3() {
  Criterion c(3, "normalization identities, 128 -> 256 stability");
  const double lambda = 0.02;

  auto fit_constants = [&](int n_max, double* c_step, double* c_limit, double* residual,
                           double* tail) {
    const BFamilySpec fam = power_law_family(2.5, 5, n_max);
    const SequenceSolution sol = solve_sequence(fam.scalars(lambda));
    *residual = sol.residual_mu;
    *tail = sol.mu_tail.estimate;
    const int horizon = 16 * n_max;
    const auto g0 = fam.majorant->moment_table(0, horizon);
    std::vector<double> gtail(horizon + 2, 0.0), ktail(horizon + 2, 0.0);
    for (int m = horizon; m >= 1; --m) {
      gtail[m] = gtail[m + 1] + g0[m];
      ktail[m] = ktail[m + 1] + m * g0[m];
    }
    *c_step = 0.0;
    *c_limit = 0.0;
    for (int n = 1; n < n_max; ++n) {
      *c_step = std::max(*c_step, std::abs(sol.a[n + 1] - sol.a[n]) / (lambda * gtail[n]));
      *c_limit = std::max(*c_limit, std::abs(sol.a[n] - sol.alpha) / (lambda * ktail[n]));
    }
  };

  double step_128, limit_128, res_128, tail_128;
  double step_256, limit_256, res_256, tail_256;
  fit_constants(128, &step_128, &limit_128, &res_128, &tail_128);
  fit_constants(256, &step_256, &limit_256, &res_256, &tail_256);

  const bool residual_ok = res_128 < tail_128 + 1e-10 && res_256 < tail_256 + 1e-10;
  const double step_factor = std::max(step_256 / step_128, step_128 / step_256);
  const double limit_factor = std::max(limit_256 / limit_128, limit_128 / limit_256);
  c.result(residual_ok && step_factor < 4.0 && limit_factor < 4.0,
           fmt("residual %.1e < tail %.1e + 1e-10; C_step x%.2f, C_limit x%.2f (< 4)", res_128,
               tail_128, step_factor, limit_factor));
}

// 4. the measured local-CLT error follows the envelope rate n^{2-a}
void criterion_4() {
  Criterion c(4, "CLT rate: L1 slope ~ -0.5 and one ratio band");
  SolverConfig cfg;
  cfg.dim = 5;
  cfg.lambda = 0.02;
  cfg.n_max = 128;
  const SolverRun run = run_recursion(cfg, power_law_family(2.5, 5, 128));
  const std::vector<int> ns{16, 32, 64, 128};
  const RatioReport rep = ratio_report(run, ns);
  std::vector<double> xs(ns.begin(), ns.end());
  const double slope = loglog_slope(xs, rep.l1_error);
  double lo = 1e300, hi = 0.0;
  for (double r : rep.sup_ratio) {
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  c.result(std::abs(slope + 0.5) < 0.3 && hi / lo < 10.0,
           fmt("L1 slope = %.3f (target -0.5 +- 0.3), ratio band x%.2f (< 10)", slope, hi / lo));
}

// 5. stability of the two envelope-side empirical constants
void criterion_5() {
  Criterion c(5, "envelope constants stable from n = 16 to 32");
  const BFamilySpec fam = power_law_family(2.5, 5, 32);
  SolverConfig cfg;
  cfg.dim = 5;
  cfg.lambda = 0.02;
  cfg.n_max = 32;
  const SolverRun run = run_recursion(cfg, fam);
  const double delta = run.sequence().delta;
  const auto radii = geometric_grid(1e-2, 10.0 * std::sqrt(32.0), 64);
  const LeMainResult le16 = le_main_check(*fam.majorant, delta, cfg.epsilon, 16, radii);
  const LeMainResult le32 = le_main_check(*fam.majorant, delta, cfg.epsilon, 32, radii);
  const DeltaCheck dc16 = delta_kj_check(run, fam, 16);
  const DeltaCheck dc32 = delta_kj_check(run, fam, 32);
  const double le_factor = std::max(le32.constant / le16.constant, le16.constant / le32.constant);
  const double dc_factor =
      std::max(dc32.sum_constant / dc16.sum_constant, dc16.sum_constant / dc32.sum_constant);
  c.result(le_factor < 4.0 && dc_factor < 4.0,
           fmt("kappa*f constant x%.2f, defect-sum constant x%.2f (both < 4)", le_factor,
               dc_factor));
}

// 6. exact lace identities on random paths plus the graph census
void criterion_6() {
  Criterion c(6, "lace identities exact on 100 paths; [0,4] census");
  saw::PathSampler sampler(3, 5, 1, 40);
  lace::Path p;
  double worst_resid = 0.0, worst_diff = 0.0;
  for (int i = 0; i < 100; ++i) {
    sampler.generate(i, p);
    for (double lambda : {0.3, 1.0})
      worst_resid = std::max(worst_resid, lace::recursion_residual(p, 5, lambda, 1.0));
    const double jb = lace::j_weight_bruteforce(p, 5, 0.3, 1.0);
    const double jl = lace::j_weight_lace(p, 5, 0.3, 1.0);
    worst_diff = std::max(worst_diff, std::abs(jb - jl) / std::max(1.0, std::abs(jb)));
  }
  const std::int64_t census = lace::lace_partition_sum(4);
  const std::int64_t connected = lace::count_connected_graphs(4);
  c.result(worst_resid < 1e-12 && worst_diff < 1e-12 && census == connected,
           fmt("max residual %.2e, max |J_brute - J_lace| %.2e, census %lld == %lld", worst_resid,
               worst_diff, static_cast<long long>(census), static_cast<long long>(connected)));
}

// 7. Monte Carlo against chi-square closed forms at one step
void criterion_7() {
  Criterion c(7, "one-step walk vs chi-square closed forms, 1e6 samples");
  saw::SawParams prm;
  prm.dim = 5;
  prm.lambda = 0.1;
  prm.rho = 1.0;
  prm.n = 1;
  prm.seed = 1;
  prm.n_samples = 1000000;

  // regularized lower incomplete gamma by series: P(chi^2_5 <= 1)
  const double s = 2.5, x = 0.5;
  double term = 1.0 / s, series = term;
  for (int k = 1; k < 200; ++k) {
    term *= x / (s + k);
    series += term;
  }
  const double p_ball = series * std::exp(-x + s * std::log(x) - std::lgamma(s));

  const McEstimate cn = saw::estimate_cn(prm);
  const auto pi = saw::estimate_pi_moments(prm, 1);
  const double z_cn = (cn.mean - (1.0 - prm.lambda * p_ball)) / cn.std_err;
  const double z_pi = (pi.pi.mean - (-prm.lambda * p_ball)) / pi.pi.std_err;
  c.result(std::abs(z_cn) <= 3.0 && std::abs(z_pi) <= 3.0,
           fmt("z(c_1) = %.2f, z(pi_1) = %.2f (|z| <= 3)", z_cn, z_pi));
}

// 8. estimated interaction kernels drive the solver onto the direct MC
void criterion_8() {
  Criterion c(8, "recursion cross-check with estimated kernels, 1e6 samples");
  saw::SawParams prm;
  prm.dim = 5;
  prm.lambda = 0.1;
  prm.rho = 1.0;
  prm.seed = 1;
  prm.n_samples = 1000000;
  const auto cc = saw::cross_check_recursion(prm, 5, RadialGrid::uniform(12.0, 256),
                                             std::vector<double>{2.0, 3.0, 4.0});
  double max_z = 0.0;
  for (int n = 1; n <= 5; ++n) max_z = std::max(max_z, std::abs(cc.z_cn[n]));
  c.result(max_z <= 3.0, fmt("max |z(c_n)| = %.2f over n <= 5 (<= 3), delta_hat = %.4f", max_z,
                             cc.delta_hat));
}

// 9. transform round trip across dimensions; the relative tolerance is
// measured down to eight decades below the profile peak (further out the
// 1e-17 quadrature roundoff floor exceeds 1e-8 of the true value)
void criterion_9() {
  Criterion c(9, "spectral round trip to 1e-8, d in {3,5,7}");
  double worst = 0.0;
  for (int d : {3, 5, 7}) {
    const auto grid = RadialGrid::uniform(12.0, 2048);
    const GaussianMixture mix(d, {{0.6, 0.5}, {0.3, 1.4}, {0.1, 2.5}});
    const RadialFn f = mixture_hat(mix, grid);
    const double floor = 1e-8 * mix.value(0.0);
    for (double r : geometric_grid(1e-2, 6.0 * std::sqrt(2.5), 32)) {
      const double direct = mix.value(r);
      worst = std::max(worst,
                       std::abs(inverse_radial(f, r, d) - direct) / std::max(direct, floor));
    }
  }
  c.result(worst < 1e-8, fmt("max relative round-trip error = %.3e (< 1e-8)", worst));
}

// 10. envelope condition report: presets pass, shallow decay is flagged
void criterion_10() {
  Criterion c(10, "condition report: presets pass, a = 1.5 flagged on B4");
  const ConditionReport saw_rep = condition_report(MajorantFamily::saw(1.0, 5), 64);
  const ConditionReport pl_rep = condition_report(MajorantFamily::power_law(2.5, 5), 64);
  const ConditionReport bad = condition_report(MajorantFamily::power_law(1.5, 5), 64);
  const bool finite = std::isfinite(saw_rep.k1 + saw_rep.k2 + saw_rep.k3 + saw_rep.k4 +
                                    saw_rep.k5 + saw_rep.k6) &&
                      std::isfinite(pl_rep.k1 + pl_rep.k2 + pl_rep.k3 + pl_rep.k4 + pl_rep.k5 +
                                    pl_rep.k6);
  bool b4_flagged = false;
  for (const auto& v : bad.violations) b4_flagged = b4_flagged || v == "B4";
  c.result(saw_rep.all_ok() && pl_rep.all_ok() && finite && b4_flagged,
           fmt("saw ok=%d, power-law ok=%d, shallow B4 flagged=%d (K1=%.2f K4=%.2f)",
               saw_rep.all_ok(), pl_rep.all_ok(), b4_flagged, saw_rep.k1, saw_rep.k4));
}

}  // namespace

int main() {
  std::printf("acceptance suite\n----------------\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("----------------\n%s (%d failing)\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
              g_failures);
  return g_failures;
}
