#include <doctest.h>

#include <cmath>

#include "lacewalk/common.hpp"
#include "lacewalk/solver.hpp"
#include "oracles.hpp"

using namespace lacewalk;

namespace {

SolverConfig small_config(int n_max, double lambda) {
  SolverConfig cfg;
  cfg.dim = 5;
  cfg.lambda = lambda;
  cfg.n_max = n_max;
  cfg.grid = RadialGrid::uniform(12.0, 1024);
  return cfg;
}

}  // namespace

TEST_CASE("free recursion is the Gaussian semigroup") {
  SolverConfig cfg = small_config(16, 0.0);
  const BFamilySpec fam = power_law_family(2.5, 5, 16);
  const SolverRun run = run_recursion(cfg, fam);
  const auto& g = *run.config().grid;
  for (int n : {1, 4, 16}) {
    for (int i = 0; i < g.size(); i += 61)
      CHECK(run.c_hat()[n].v[i] ==
            doctest::Approx(std::exp(-0.5 * n * g.k[i] * g.k[i])).epsilon(1e-12));
  }
  CHECK(run.sequence().mu == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(run.sequence().delta == doctest::Approx(1.0).epsilon(1e-14));
  // real space: C_n = phi_n on a few radii
  for (double r : {0.0, 1.0, 4.0})
    CHECK(run.density(4, r) == doctest::Approx(oracle::phi_radial(5, 4.0, r)).epsilon(1e-9));
}

TEST_CASE("mass column: C_n^(0) = c_n to 1e-12 relative") {
  SolverConfig cfg = small_config(64, 0.05);
  const BFamilySpec fam = power_law_family(2.5, 5, 64);
  const SolverRun run = run_recursion(cfg, fam);
  for (int n = 0; n <= 64; ++n) {
    const double cn = run.sequence().c[n];
    CHECK(std::abs(run.c_hat()[n].at0() - cn) <= 1e-12 * std::max(1.0, std::abs(cn)));
  }
}

TEST_CASE("normalized mass column: mu^{-n} C_n^(0) = a_n") {
  SolverConfig cfg = small_config(48, 0.05);
  const BFamilySpec fam = power_law_family(2.5, 5, 48);
  const SolverRun run = run_recursion(cfg, fam);
  double inv_pow = 1.0;
  for (int n = 0; n <= 48; ++n) {
    CHECK(run.c_hat()[n].at0() * inv_pow ==
          doctest::Approx(run.sequence().a[n]).epsilon(1e-12));
    inv_pow /= run.sequence().mu;
  }
}

TEST_CASE("frequency recursion residual at machine precision") {
  SolverConfig cfg = small_config(32, 0.05);
  const BFamilySpec fam = power_law_family(2.5, 5, 32);
  const SolverRun run = run_recursion(cfg, fam);
  CHECK(run.recursion_residual() < 1e-13);
}

TEST_CASE("single-mode family against a hand-unrolled two-step recursion") {
  const double lambda = 0.1, beta = 0.5, s = 2.0;
  SolverConfig cfg = small_config(2, lambda);
  const BFamilySpec fam = single_mode_family(beta, s, 5, 2);
  const SolverRun run = run_recursion(cfg, fam);
  const double c1 = 1.0 / (1.0 - lambda * beta);
  const auto& g = *run.config().grid;
  for (int i = 0; i < g.size(); i += 97) {
    const double k2 = g.k[i] * g.k[i];
    const double e1 = std::exp(-0.5 * k2);
    const double es = std::exp(-0.5 * s * k2);
    const double c1_hat = e1 + lambda * c1 * beta * es;
    // C_2^ = C_1^ e^{-k^2/2} + lambda c_1 B_1^ C_1^  (B_2 = 0), i.e.
    //       e^{-k^2} + lambda beta c_1 e^{-(s+1)k^2/2} (1 + ...) hand unrolled
    const double expected = c1_hat * e1 + lambda * c1 * beta * es * c1_hat;
    CHECK(run.c_hat()[2].v[i] == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("error profile vanishes for the free walk") {
  SolverConfig cfg = small_config(12, 0.0);
  const BFamilySpec fam = power_law_family(2.5, 5, 12);
  const SolverRun run = run_recursion(cfg, fam);
  for (int n : {2, 8, 12}) {
    for (double e : clt_error_profile(run, n)) CHECK(e < 1e-10);
    for (double ratio : ratio_report(run, {n}).sup_ratio) CHECK(ratio == 0.0);
  }
}

TEST_CASE("error profile decays at large radius") {
  SolverConfig cfg = small_config(16, 0.05);
  const BFamilySpec fam = power_law_family(2.5, 5, 16);
  const SolverRun run = run_recursion(cfg, fam);
  const auto err = clt_error_profile(run, 16);
  const auto& radii = run.config().radii;
  for (double e : err) CHECK(std::isfinite(e));
  CHECK(err.back() < err[radii.size() / 2]);
}

TEST_CASE("bound profile: positivity and the mass rule") {
  SolverConfig cfg = small_config(16, 0.05);
  const BFamilySpec fam = power_law_family(2.5, 5, 16);
  const SolverRun run = run_recursion(cfg, fam);
  const int n = 12;
  const auto bnd = bound_profile(run, n);
  for (double b : bnd) CHECK(b > 0.0);

  // quadrature of the bound against lambda [sum s gamma0(n-s) + zbar]
  const GaussianMixture f =
      f_profile(*run.majorant(), run.zeta(), run.sequence().delta, cfg.epsilon, n);
  double expected = run.zeta().zbar[n];
  for (int s = 1; s <= n / 2; ++s) expected += s * run.majorant()->moment(n - s, 0);
  CHECK(f.mass() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("sup ratios sit in one band across n and scale ~linearly in lambda") {
  SolverConfig cfg = small_config(64, 0.02);
  const BFamilySpec fam = power_law_family(2.5, 5, 64);
  const SolverRun run = run_recursion(cfg, fam);
  const RatioReport rep = ratio_report(run, {8, 16, 32, 64});
  double lo = 1e300, hi = 0.0;
  for (double r : rep.sup_ratio) {
    CHECK(r > 0.0);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(hi / lo < 10.0);

  // halving lambda must not inflate the sup ratio by more than x2
  SolverConfig cfg2 = small_config(64, 0.01);
  cfg2.radii = run.config().radii;
  const SolverRun run2 = run_recursion(cfg2, fam);
  const RatioReport rep2 = ratio_report(run2, {8, 16, 32, 64});
  for (std::size_t i = 0; i < rep.sup_ratio.size(); ++i)
    CHECK(rep2.sup_ratio[i] < 2.0 * rep.sup_ratio[i]);
}

TEST_CASE("telescoping defect: exact cancellation at lambda = 0") {
  SolverConfig cfg = small_config(8, 0.0);
  const BFamilySpec fam = power_law_family(2.5, 5, 8);
  const SolverRun run = run_recursion(cfg, fam);
  const DeltaCheck chk = delta_kj_check(run, fam, 8);
  CHECK(chk.sum_constant < 1e-12);   // un-normalized |Delta| at lambda = 0
  CHECK(chk.diag_constant < 1e-12);
}

TEST_CASE("telescoping defect constants are stable when n doubles") {
  const BFamilySpec fam = power_law_family(2.5, 5, 32);
  SolverConfig cfg = small_config(32, 0.02);
  const SolverRun run = run_recursion(cfg, fam);
  const DeltaCheck c16 = delta_kj_check(run, fam, 16);
  const DeltaCheck c32 = delta_kj_check(run, fam, 32);
  CHECK(c16.sum_constant > 0.0);
  CHECK(c32.sum_constant / c16.sum_constant < 4.0);
  CHECK(c16.sum_constant / c32.sum_constant < 4.0);
  CHECK(std::isfinite(c16.diag_constant));
  CHECK(std::isfinite(c32.diag_constant));
}

TEST_CASE("saw envelope bound near the origin scales like the rate table") {
  // no pointwise CLT at 0: the bound keeps an n^{-d/2} * n component there
  SolverConfig cfg = small_config(24, 0.05);
  cfg.radii = {0.01, 1.0};
  const BFamilySpec fam = saw_majorant_family(1.0, 5, 24);
  const SolverRun run = run_recursion(cfg, fam);
  const auto b12 = bound_profile(run, 12);
  const auto b24 = bound_profile(run, 24);
  CHECK(b12[0] > 0.0);
  CHECK(b24[0] > 0.0);
  // the near-origin bound decays no faster than ~n^{1-d/2} between n and 2n
  const double decay = b24[0] / b12[0];
  CHECK(decay > std::pow(2.0, -2.5) * 0.25);
  CHECK(decay < 1.0);
}

TEST_CASE("walk-type envelope scale flag") {
  SolverConfig cfg = small_config(8, 0.05);
  const SolverRun run = run_recursion(cfg, saw_majorant_family(1.0, 5, 8));
  // delta ~ 1 at small coupling, so with eps = 0.01 the 4/5 floor holds
  CHECK(run.envelope_scale_ok());
  const SolverRun pl = run_recursion(cfg, power_law_family(2.5, 5, 8));
  CHECK(pl.envelope_scale_ok());
}

TEST_CASE("config validation") {
  SolverConfig cfg;
  cfg.dim = 4;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg.dim = 5;
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}
