#include <doctest.h>

#include <cmath>

#include "lacewalk/bfamily.hpp"
#include "lacewalk/common.hpp"
#include "lacewalk/majorant.hpp"
#include "oracles.hpp"

using namespace lacewalk;

TEST_CASE("envelope moments: closed forms vs radial quadrature") {
  const MajorantFamily pl = MajorantFamily::power_law(2.5, 5);
  CHECK(pl.moment(1, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(pl.moment(2, 2) == doctest::Approx(35.0 / std::pow(2.0, 2.5)).epsilon(1e-14));

  // quadrature oracle on the radial profile written out directly
  auto gamma2 = [&](double r) { return std::pow(2.0, -2.5) * oracle::phi_radial(5, 1.0, r); };
  const double q = oracle::radial_moment(5, gamma2, 2, 14.0);
  CHECK(pl.moment(2, 2) == doctest::Approx(q).epsilon(1e-8));

  const MajorantFamily sw = MajorantFamily::saw(1.0, 5);
  auto gamma3 = [&](double r) {
    double s = 0.0;
    for (int k = 1; k <= 3; ++k)
      s += std::pow(k, -1.5) * oracle::phi_radial(5, 0.4 * k, r);
    return std::pow(3.0, -2.5) * s;
  };
  for (int k = 0; k <= 2; ++k)
    CHECK(sw.moment(3, k) ==
          doctest::Approx(oracle::radial_moment(5, gamma3, k, 14.0)).epsilon(1e-8));
}

TEST_CASE("single-term second moment is w d t") {
  const GaussianMixture g = GaussianMixture::gaussian(7, 1.3, 0.25);
  CHECK(g.moment(1) == doctest::Approx(0.25 * 7 * 1.3).epsilon(1e-15));
}

TEST_CASE("chi: power law is exact, symmetric, and (2/m)^a on the diagonal") {
  const MajorantFamily pl = MajorantFamily::power_law(2.2, 5);
  for (int m : {1, 2, 5, 9}) {
    CHECK(pl.chi(m, m) == doctest::Approx(std::pow(2.0 / m, 2.2)).epsilon(1e-14));
    for (int n : {1, 3, 8}) CHECK(pl.chi(m, n) == doctest::Approx(pl.chi(n, m)).epsilon(1e-15));
  }
  // exactness: Gamma_m * Gamma_n = chi Gamma_{m+n} for single-term envelopes
  const GaussianMixture conv = pl.gamma(3).convolve(pl.gamma(5));
  const GaussianMixture target = pl.gamma(8).scaled(pl.chi(3, 5));
  for (double r : {0.0, 1.0, 3.0, 7.0})
    CHECK(conv.value(r) == doctest::Approx(target.value(r)).epsilon(1e-13));
}

TEST_CASE("saw envelope: pointwise convolution domination on the radius grid") {
  const MajorantFamily sw = MajorantFamily::saw(1.0, 5);
  const auto radii = geometric_grid(1e-2, 10.0 * std::sqrt(32.0), 64);
  for (int m = 1; m <= 16; m += 3) {
    for (int n = m; n <= 16; n += 4) {
      const GaussianMixture conv = sw.gamma(m).convolve(sw.gamma(n));
      const double chi = sw.chi(m, n);
      const GaussianMixture target = sw.gamma(m + n);
      for (double r : radii)
        CHECK(conv.value(r) <= chi * target.value(r) * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("zeta table: decay, window control, log-log slope") {
  const MajorantFamily pl = MajorantFamily::power_law(2.5, 5);
  const int n_max = 256;
  const ZetaTable z = make_zeta_table(pl, n_max);

  // decreasing over the observation window
  for (int n = 16; n < n_max; ++n) CHECK(z.zbar[n + 1] <= z.zbar[n] * (1.0 + 1e-12));

  // doubling-window control: values inside [n, 2n] within a bounded multiple
  // of the endpoint value (the literal unscaled inequality fails for any
  // strictly decreasing sequence; the bounded-ratio form is what holds)
  double window_ratio = 0.0;
  for (int n = 8; 2 * n <= n_max; ++n)
    for (int m = n; m <= 2 * n; ++m)
      window_ratio = std::max(window_ratio, z.zbar[m] / z.zbar[2 * n]);
  CHECK(window_ratio < std::pow(2.0, 0.5) * 1.35);  // ~2^{a-2} plus slack

  // zbar ~ n^{2-a}: slope within +-0.3 of -0.5 on [16, 256]
  std::vector<double> xs, ys;
  for (int n = 16; n <= 256; n *= 2) {
    xs.push_back(n);
    ys.push_back(z.zbar[n]);
  }
  CHECK(std::abs(loglog_slope(xs, ys) - (-0.5)) < 0.3);
}

TEST_CASE("error-rate table") {
  CHECK(clt_rate(5, 4) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(clt_rate(7, 10) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(clt_rate(6, 10) == doctest::Approx(std::log(10.0) / 10.0).epsilon(1e-15));
  CHECK_THROWS_AS(clt_rate(4, 10), ValidationError);
}

TEST_CASE("psi profile") {
  const GaussianMixture p = psi_mixture(5, 1.0, 0.0, 3.0);
  CHECK(p.terms().size() == 1);
  CHECK(p.terms()[0].var == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(p.mass() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(psi_mixture(5, 0.95, 0.01, 10.0).terms()[0].var ==
        doctest::Approx(9.595).epsilon(1e-14));
}

TEST_CASE("composite envelope f_n: structure, mass rule, quadrature at 0") {
  const MajorantFamily pl = MajorantFamily::power_law(2.5, 5);
  const int n_max = 16;
  const ZetaTable z = make_zeta_table(pl, n_max);
  const double delta = 0.98, eps = 0.01;

  // n = 2: single s = 1 term plus the zbar top term
  const GaussianMixture f2 = f_profile(pl, z, delta, eps, 2);
  CHECK(f2.terms().size() == 2);
  CHECK(f2.positive());

  // mass rule: mass(f_n) = sum s gamma0(n-s) + zbar(n)
  const int n = 12;
  const GaussianMixture fn = f_profile(pl, z, delta, eps, n);
  double expected_mass = z.zbar[n];
  for (int s = 1; s <= n / 2; ++s) expected_mass += s * pl.moment(n - s, 0);
  CHECK(fn.mass() == doctest::Approx(expected_mass).epsilon(1e-12));

  // the value at radius 0 against direct radial quadrature of the defining sum
  const int n16 = 16;
  const GaussianMixture f16 = f_profile(pl, z, delta, eps, n16);
  double at0 = 0.0;
  for (int s = 1; s <= n16 / 2; ++s) {
    const double ts = s * delta * (1.0 + eps);
    auto integrand = [&](double r) {
      return oracle::phi_radial(5, ts, r) * std::pow(n16 - s, -2.5) *
             oracle::phi_radial(5, 0.5 * (n16 - s), r);
    };
    at0 += s * oracle::radial_moment(5, integrand, 0, 20.0);
  }
  at0 += z.zbar[n16] * oracle::phi_radial(5, n16 * delta * (1.0 + eps), 0.0);
  CHECK(f16.value(0.0) == doctest::Approx(at0).epsilon(1e-8));
}

TEST_CASE("kappa profile weights are positive and scale like f without s") {
  const MajorantFamily pl = MajorantFamily::power_law(2.5, 5);
  const ZetaTable z = make_zeta_table(pl, 8);
  const GaussianMixture k8 = kappa_profile(pl, z, 1.0, 0.01, 8);
  CHECK(k8.positive());
  // n = 2 sanity: kappa(2) = psi_1 * Gamma_1 + (zbar(2)/2) psi_2
  const GaussianMixture k2 = kappa_profile(pl, z, 1.0, 0.01, 2);
  const double expected =
      GaussianMixture::gaussian(5, 1.01).convolve(pl.gamma(1)).value(0.7) +
      0.5 * z.zbar[2] * gaussian_radial(5, 2.02, 0.7);
  CHECK(k2.value(0.7) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("convolution-stability constant is finite and stable under doubling") {
  const MajorantFamily pl = MajorantFamily::power_law(2.5, 5);
  const auto radii = geometric_grid(1e-2, 10.0 * std::sqrt(32.0), 48);
  const LeMainResult r16 = le_main_check(pl, 0.98, 0.01, 16, radii);
  const LeMainResult r32 = le_main_check(pl, 0.98, 0.01, 32, radii);
  CHECK(r16.constant > 0.0);
  const double growth = r32.constant / r16.constant;
  CHECK(growth < 4.0);
  CHECK(growth > 0.25);
}

TEST_CASE("condition report: both presets pass, shallow power law trips B4") {
  const ConditionReport pl = condition_report(MajorantFamily::power_law(2.5, 5), 64);
  CHECK(pl.all_ok());
  CHECK(pl.k1 > 0.0);
  CHECK(pl.k4 > 0.0);

  const ConditionReport sw = condition_report(MajorantFamily::saw(1.0, 5), 64);
  CHECK(sw.all_ok());

  const ConditionReport bad = condition_report(MajorantFamily::power_law(1.5, 5), 64);
  CHECK_FALSE(bad.b4_ok);
  bool has_b4 = false;
  for (const auto& v : bad.violations) has_b4 = has_b4 || v == "B4";
  CHECK(has_b4);
}

TEST_CASE("condition report serializes to JSON with its contract keys") {
  const ConditionReport rep = condition_report(MajorantFamily::power_law(2.5, 5), 16);
  const std::string j = to_json_string(rep);
  for (const char* key : {"\"k1\"", "\"k4\"", "\"k6\"", "\"violations\"", "\"tails\""})
    CHECK(j.find(key) != std::string::npos);
}

TEST_CASE("declared envelopes dominate their own families") {
  const BFamilySpec fam = saw_majorant_family(1.0, 5, 12);
  const auto radii = geometric_grid(1e-2, 20.0, 48);
  CHECK(domination_ratio(fam, 12, radii) <= 1.0 + 1e-12);
}
