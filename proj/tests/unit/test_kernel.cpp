#include <doctest.h>

#include <cmath>
#include <random>

#include "hypzero/errors.hpp"
#include "hypzero/kernel.hpp"

using namespace hypzero;

TEST_CASE("alpha validation") {
  CHECK_NOTHROW(Alpha(1.0, 0.0));
  CHECK_NOTHROW(Alpha(0.5, -3.0));
  CHECK_THROWS_AS(Alpha(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(Alpha(-1.0, 0.0), DomainError);
  CHECK_THROWS_AS(Alpha(std::nan(""), 0.0), DomainError);
  CHECK(Alpha(2.0, 0.0).is_real());
  CHECK_FALSE(Alpha(2.0, 1.0).is_real());
}

TEST_CASE("principal log values") {
  CHECK(std::abs(principal_log(1.0)) == doctest::Approx(0.0));
  const cplx m1 = principal_log(-1.0);
  CHECK(m1.real() == doctest::Approx(0.0));
  CHECK(m1.imag() == doctest::Approx(kPi));
  // -1 - 0i also maps to +i pi
  CHECK(principal_log(cplx(-1.0, -0.0)).imag() == doctest::Approx(kPi));
  const cplx l2i = principal_log(cplx(0.0, 2.0));
  CHECK(l2i.real() == doctest::Approx(std::log(2.0)));
  CHECK(l2i.imag() == doctest::Approx(kPi / 2));
  CHECK_THROWS_AS(principal_log(0.0), DomainError);
}

TEST_CASE("principal log commutes with conjugation off the cut") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const cplx w(u(rng), u(rng));
    if (w.real() < 0.0 && std::abs(w.imag()) < 1e-9) continue;
    const cplx a = principal_log(std::conj(w));
    const cplx b = std::conj(principal_log(w));
    CHECK(std::abs(a - b) < 1e-14);
  }
}

TEST_CASE("tracked log winds continuously around the origin") {
  BranchTrackedValue v = track_log(1.0);
  double prev = v.imag_phase;
  for (int k = 1; k <= 400; ++k) {
    const cplx w = std::polar(2.0, kTwoPi * k / 200.0);
    v = track_log(w, v);
    CHECK(std::abs(v.imag_phase - prev) < kPi);
    prev = v.imag_phase;
    // exp of the continued value reproduces w
    CHECK(std::abs(std::exp(v.continued()) - w) < 1e-12);
  }
  CHECK(v.imag_phase == doctest::Approx(2.0 * kTwoPi));
  CHECK(unwind(0.1, 4.0 * kPi) == doctest::Approx(0.1 + 4.0 * kPi));
}

TEST_CASE("phi examples") {
  const Alpha one(1.0, 0.0);
  CHECK(phi(0.5, 1.0, one).value.real() == doctest::Approx(-2.0 * std::log(2.0)));
  CHECK(std::abs(phi(0.5, 1.0, one).value.imag()) < 1e-15);
  const Alpha a(1.5, -0.7);
  const cplx expect = a.value() * std::log(0.5);
  CHECK(std::abs(phi(0.5, 0.0, a).value - expect) < 1e-15);
  for (int i = 1; i <= 100; ++i) {
    const double t = i / 100.0;
    const PhiState s = phi(t, 0.5, one);
    CHECK(s.value.imag() == 0.0);
    CHECK(s.value.real() == doctest::Approx(std::log(t) + std::log(1.0 - 0.5 * t)));
  }
  CHECK_THROWS_AS(phi(0.0, 1.0, one), SingularPointError);
  CHECK_THROWS_AS(phi(cplx(0.5, 0.5), cplx(1.0, -1.0), one), SingularPointError);
}

TEST_CASE("phi_prime examples") {
  const Alpha one(1.0, 0.0);
  CHECK(std::abs(phi_prime(0.25, 1.0, one) - 8.0 / 3.0) < 1e-14);
  CHECK(std::abs(phi_prime(1.0, 0.0, one) - 1.0) < 1e-15);
  const Alpha a(1.0, 1.0);
  const cplx z(2.0, -0.5);
  const cplx t0 = a.value() / ((a.value() + 1.0) * z);
  CHECK(std::abs(phi_prime(t0, z, a)) < 1e-14);
  CHECK_THROWS(phi_prime(0.0, z, a));
}

TEST_CASE("phi_prime and phi_second agree with finite differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const Alpha alphas[] = {Alpha(1, 0), Alpha(1, 1), Alpha(2, -1), Alpha(0.5, 1)};
  int tested = 0;
  while (tested < 100) {
    const Alpha& a = alphas[tested % 4];
    const cplx z(u(rng), u(rng));
    const cplx t(u(rng), u(rng));
    if (std::abs(t) < 0.2 || std::abs(1.0 - z * t) < 0.2 || std::abs(z) < 0.1) continue;
    const double h = 1e-6 * std::abs(t);
    const PhiState base = phi(t, z, a);
    const cplx fd = (phi(t + h, z, a, base).value - phi(t - h, z, a, base).value) / (2.0 * h);
    const cplx d = phi_prime(t, z, a);
    CHECK(std::abs(fd - d) <= 1e-6 * std::abs(d) + 1e-9);
    const cplx fd2 = (phi_prime(t + h, z, a) - phi_prime(t - h, z, a)) / (2.0 * h);
    const cplx d2 = phi_second(t, z, a);
    CHECK(std::abs(fd2 - d2) <= 1e-6 * std::abs(d2) + 1e-8);
    ++tested;
  }
}

TEST_CASE("continued phi keeps both branches across a full turn") {
  const Alpha a(1.0, 1.0);
  const cplx z(0.3, 0.1);
  PhiState s = phi(0.5, z, a);
  for (int k = 1; k <= 200; ++k) {
    s = phi(std::polar(0.5, kTwoPi * k / 200.0), z, a, s);
  }
  CHECK(s.log_t.imag_phase == doctest::Approx(kTwoPi));
  const PhiState fresh = phi(0.5, z, a);
  // One extra turn of log t shifts phi by 2 pi i alpha.
  CHECK(std::abs((s.value - fresh.value) - cplx(0.0, kTwoPi) * a.value()) < 1e-10);
}

TEST_CASE("precision modes") {
  CHECK(Precision::parse("double") == Precision::double_precision());
  CHECK(Precision::parse("extended:256") == Precision::extended(256));
  CHECK(Precision::parse("auto") == Precision::automatic());
  CHECK(Precision::parse("extended:256").str() == "extended:256");
  CHECK_THROWS_AS(Precision::parse("extended:8"), ConfigError);
  CHECK_THROWS_AS(Precision::parse("extended:"), ConfigError);
  CHECK_THROWS_AS(Precision::parse("quad"), ConfigError);
  CHECK(Precision::automatic().bits_for(50) == auto_bits(50));
  CHECK(Precision::extended(300).bits_for(50) == 300u);
  CHECK(auto_bits(100) > auto_bits(10));
}
