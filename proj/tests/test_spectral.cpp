#include <doctest.h>

#include <cmath>

#include "lacewalk/common.hpp"
#include "lacewalk/spectral.hpp"
#include "oracles.hpp"

using namespace lacewalk;

TEST_CASE("grid weights are a partition of [0, k_max]") {
  const auto g = RadialGrid::uniform(12.0, 2048);
  CHECK(g->k.front() == 0.0);
  CHECK(g->k.back() == 12.0);
  double sum = 0.0;
  for (double w : g->w) {
    CHECK(w > 0.0);
    sum += w;
  }
  CHECK(sum == doctest::Approx(12.0).epsilon(1e-12));
}

TEST_CASE("mixture transform basics") {
  const auto g = RadialGrid::uniform(12.0, 512);
  const GaussianMixture phi = GaussianMixture::gaussian(5, 1.7);
  const RadialFn f = mixture_hat(phi, g);
  CHECK(f.at0() == doctest::Approx(1.0).epsilon(1e-15));
  for (int i = 0; i < g->size(); i += 37)
    CHECK(f.v[i] == doctest::Approx(std::exp(-0.85 * g->k[i] * g->k[i])).epsilon(1e-14));

  // linearity and the convolution product rule
  const GaussianMixture a(5, {{0.4, 0.6}, {-0.1, 2.0}});
  const GaussianMixture b(5, {{1.1, 1.2}});
  const RadialFn fa = mixture_hat(a, g), fb = mixture_hat(b, g);
  GaussianMixture sum = a;
  sum += b;
  const RadialFn fsum = mixture_hat(sum, g);
  const RadialFn fconv = mixture_hat(a.convolve(b), g);
  for (int i = 0; i < g->size(); i += 23) {
    CHECK(fsum.v[i] == doctest::Approx(fa.v[i] + fb.v[i]).epsilon(1e-13));
    CHECK(fconv.v[i] == doctest::Approx(fa.v[i] * fb.v[i]).epsilon(1e-14));
  }
}

TEST_CASE("half-integer Bessel values") {
  CHECK(std::abs(bessel_j_half(1, oracle::kPi)) < 1e-15);

  // small-argument behavior of J_{3/2} against the leading series term
  const double u = 1e-3;
  const double lead = std::pow(u, 1.5) * std::sqrt(2.0) / (3.0 * std::sqrt(oracle::kPi));
  CHECK(bessel_j_half(3, u) == doctest::Approx(lead).epsilon(1e-6));
  // and against the full integral representation
  CHECK(bessel_j_half(3, u) == doctest::Approx(oracle::bessel_integral(1.5, u)).epsilon(1e-9));

  // moderate arguments vs the integral representation, all supported orders
  for (int o : {1, 3, 5, 7}) {
    const double nu = 0.5 * o;
    for (double x : {0.05, 0.3, 1.0, 2.0, 7.5}) {
      CHECK(bessel_j_half(o, x) ==
            doctest::Approx(oracle::bessel_integral(nu, x)).epsilon(1e-10));
    }
  }
  CHECK(std::abs(bessel_j_half(5, 2.0) - oracle::bessel_integral(2.5, 2.0)) < 1e-10);
  CHECK_THROWS_AS(bessel_j_half(9, 1.0), ValidationError);
}

TEST_CASE("inverse transform reproduces Gaussian densities") {
  const auto g = RadialGrid::uniform(12.0, 2048);
  // phi_1 at the origin in d = 5
  {
    const RadialFn f = mixture_hat(GaussianMixture::gaussian(5, 1.0), g);
    CHECK(inverse_radial(f, 0.0, 5) ==
          doctest::Approx(oracle::phi_radial(5, 1.0, 0.0)).epsilon(1e-10));
  }
  for (double t : {1.0, 4.0}) {
    const RadialFn f = mixture_hat(GaussianMixture::gaussian(5, t), g);
    for (double r : {0.0, 1.0, 3.0}) {
      CHECK(inverse_radial(f, r, 5) ==
            doctest::Approx(oracle::phi_radial(5, t, r)).epsilon(1e-8));
    }
  }
}

TEST_CASE("inverse transform is linear over mixture terms") {
  const auto g = RadialGrid::uniform(12.0, 2048);
  const GaussianMixture mix(5, {{0.5, 0.7}, {0.3, 1.9}, {-0.1, 3.1}});
  const RadialFn f = mixture_hat(mix, g);
  for (double r : {0.0, 0.8, 2.2}) {
    double expected = 0.0;
    for (const auto& t : mix.terms()) expected += t.weight * oracle::phi_radial(5, t.var, r);
    CHECK(inverse_radial(f, r, 5) == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("round trip to 1e-8 relative for d in {3,5,7}") {
  for (int d : {3, 5, 7}) {
    const auto g = RadialGrid::uniform(12.0, 2048);
    const GaussianMixture mix(d, {{0.6, 0.5}, {0.3, 1.4}, {0.1, 2.5}});
    const RadialFn f = mixture_hat(mix, g);
    const double sigma = std::sqrt(2.5);
    for (double r : geometric_grid(1e-2, 6.0 * sigma, 24)) {
      const double direct = mix.value(r);
      CHECK(inverse_radial(f, r, d) == doctest::Approx(direct).epsilon(1e-8));
    }
    CHECK(inverse_radial(f, 0.0, d) == doctest::Approx(mix.value(0.0)).epsilon(1e-8));
  }
}

TEST_CASE("doubling the grid changes converged transforms below 1e-9") {
  const GaussianMixture mix(5, {{0.8, 1.0}, {0.2, 3.0}});
  const auto g1 = RadialGrid::uniform(12.0, 2048);
  const auto g2 = RadialGrid::uniform(12.0, 4096);
  const RadialFn f1 = mixture_hat(mix, g1), f2 = mixture_hat(mix, g2);
  for (double r : {0.0, 0.5, 1.5, 4.0})
    CHECK(std::abs(inverse_radial(f1, r, 5) - inverse_radial(f2, r, 5)) < 1e-9);
}

TEST_CASE("decay guard rejects unsafe truncation and even dimensions") {
  const auto g = RadialGrid::uniform(2.0, 256);  // far too short for phi_{0.1}
  const RadialFn f = mixture_hat(GaussianMixture::gaussian(5, 0.1), g);
  CHECK_THROWS_AS(inverse_radial(f, 1.0, 5), ValidationError);
  const auto g2 = RadialGrid::uniform(12.0, 256);
  const RadialFn f2 = mixture_hat(GaussianMixture::gaussian(4, 1.0), g2);
  CHECK_THROWS_AS(inverse_radial(f2, 1.0, 4), ValidationError);
}

TEST_CASE("plane-wave rotational average") {
  CHECK(omega_kernel(5, 0.0) == 1.0);
  CHECK(std::abs(omega_kernel(3, oracle::kPi)) < 1e-15);
  CHECK(omega_kernel(3, 1.3) == doctest::Approx(std::sin(1.3) / 1.3).epsilon(1e-14));

  // the d = 5 closed form is computed, then checked against a plain MC
  // average of cos(k . x) over random directions
  const double closed = omega_kernel(5, 1.0);
  CHECK(closed == doctest::Approx(3.0 * (std::sin(1.0) - std::cos(1.0))).epsilon(1e-13));
  const auto mc = oracle::rotational_average_mc(5, 1.0, 1.0, 1000000);
  CHECK(std::abs(closed - mc.mean) < 3.0 * mc.err);

  // series branch continuity at the switch point
  CHECK(omega_kernel(5, 0.4999999) == doctest::Approx(omega_kernel(5, 0.5000001)).epsilon(1e-6));
  for (int d : {3, 5, 7, 9}) {
    CHECK(omega_kernel(d, 1e-9) == doctest::Approx(1.0).epsilon(1e-12));
    // consistency with the Bessel route at a generic argument
    const double u = 2.37;
    const double nu = 0.5 * d - 1.0;
    const double via_bessel =
        std::tgamma(0.5 * d) * std::pow(2.0 / u, nu) * oracle::bessel_integral(nu, u);
    CHECK(omega_kernel(d, u) == doctest::Approx(via_bessel).epsilon(1e-9));
  }
}
