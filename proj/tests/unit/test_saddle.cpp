#include <doctest.h>

#include <cmath>
#include <random>

#include "hypzero/errors.hpp"
#include "hypzero/saddle.hpp"

using namespace hypzero;

TEST_CASE("saddle point examples") {
  const SaddleData a = saddle_point(1.0, Alpha(1, 0));
  CHECK(std::abs(a.t0 - cplx(0.5, 0.0)) < 1e-15);
  CHECK(a.phi_pp_mod == doctest::Approx(8.0).epsilon(1e-14));

  const SaddleData b = saddle_point(2.0, Alpha(1, 1));
  CHECK(std::abs(b.t0 - cplx(0.3, 0.1)) < 1e-15);

  CHECK_THROWS_AS(saddle_point(0.0, Alpha(1, 0)), DomainError);
}

TEST_CASE("phi' vanishes at the saddle") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const Alpha alphas[] = {Alpha(1, 0), Alpha(2, 0), Alpha(1, 1), Alpha(0.5, 1), Alpha(2, -1)};
  for (const Alpha& a : alphas) {
    for (int i = 0; i < 20; ++i) {
      const cplx z(u(rng), u(rng));
      const SaddleData s = saddle_point(z, a);
      const double scale = std::abs(a.value()) / std::abs(s.t0);
      CHECK(std::abs(phi_prime(s.t0, z, a)) <= 1e-13 * scale);
      CHECK(s.phi_pp_mod ==
            doctest::Approx(std::abs(phi_second(s.t0, z, a))).epsilon(1e-12));
    }
  }
}

TEST_CASE("level constants") {
  CHECK(std::abs(level_constant(Alpha(1, 0)) - 0.25) < 1e-12);
  CHECK(std::abs(level_constant(Alpha(2, 0)) - 4.0 / 27.0) < 1e-12);
  CHECK(std::abs(level_constant(Alpha(3, 0)) - 27.0 / 256.0) < 1e-12);
  const double k = 0.5;
  CHECK(std::abs(level_constant(Alpha(k, 0)) - std::pow(k, k) / std::pow(k + 1, k + 1)) < 1e-12);
  // |exp((1+i) Log((3+i)/5))| / sqrt 5
  const cplx w(0.6, 0.2);
  const double expected = std::abs(std::exp(cplx(1, 1) * std::log(w))) / std::sqrt(5.0);
  CHECK(std::abs(level_constant(Alpha(1, 1)) - expected) < 1e-14);
  CHECK(level_constant(Alpha(1, 1)) == doctest::Approx(0.20502).epsilon(1e-4));
  CHECK(std::abs(crossing_point(Alpha(2, 0)) - cplx(2.0 / 3.0, 0.0)) < 1e-15);
}

TEST_CASE("|t0^alpha (1 - z t0) z^alpha| does not depend on z") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const Alpha& a : {Alpha(1, 1), Alpha(2, -1), Alpha(0.5, 2)}) {
    const double c = level_constant(a);
    for (int i = 0; i < 50; ++i) {
      const cplx z(u(rng), u(rng));
      const SaddleData s = saddle_point(z, a);
      // Branch of t0^alpha z^alpha taken as (alpha/(alpha+1))^alpha, as in log_g_at_t0.
      const double lhs = std::exp(s.log_g_at_t0.continued().real() +
                                  (a.value() * principal_log(z)).real());
      CHECK(std::abs(lhs - c) <= 1e-10 * c);
    }
  }
}

TEST_CASE("I1 asymptotic at z = 1, alpha = 1") {
  for (int n : {1, 10, 200}) {
    const I1Asymptotic r = I1_asymptotic(n, 1.0, Alpha(1, 0), std::nullopt, false);
    const double expected = n * std::log(0.25) + 0.5 * std::log(2.0 * kPi / (8.0 * n));
    CHECK(r.log_modulus == doctest::Approx(expected).epsilon(1e-13));
  }
  const I1Asymptotic big = I1_asymptotic(100000, 1.0, Alpha(1, 0), std::nullopt, false);
  CHECK(std::abs(big.log_modulus / 100000.0 - std::log(0.25)) < 1e-3);
  CHECK_THROWS_AS(I1_asymptotic(0, 1.0, Alpha(1, 0), std::nullopt, false), DomainError);
}

TEST_CASE("I1 asymptotic against the beta-function closed form") {
  // For real alpha the integral of t^{alpha n}(1 - z t)^n over [0, 1/z] is
  // z^{-(alpha n + 1)} n! / prod_{j=0}^{n} (alpha n + 1 + j).
  const Alpha a(1, 0);
  const cplx z(0.6, 0.0);
  for (int n : {20, 40, 80}) {
    double log_exact = -(n + 1.0) * std::log(std::abs(z)) + std::lgamma(n + 1.0);
    for (int j = 0; j <= n; ++j) log_exact -= std::log(n + 1.0 + j);
    const I1Asymptotic r = I1_asymptotic(n, z, a);
    const double ratio = std::exp(log_exact - r.log_modulus);
    CHECK(std::abs(ratio - 1.0) <= 1.0 / n);
  }
}

TEST_CASE("I1 asymptotic refuses points outside E") {
  CHECK_THROWS_AS(I1_asymptotic(10, cplx(-0.5, 0.2), Alpha(1, 0)), RegionError);
}
