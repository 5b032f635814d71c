#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hypzero/errors.hpp"
#include "hypzero/roots.hpp"

using namespace hypzero;

TEST_CASE("linear and quadratic zeros") {
  const ZeroSet one = find_roots(coefficients(1, Alpha(1, 0)), Precision::double_precision());
  REQUIRE(one.zeros.size() == 1);
  CHECK(std::abs(one.zeros[0] - cplx(1.5, 0.0)) < 1e-14);

  const ZeroSet two = find_roots(coefficients(2, Alpha(1, 0)));
  REQUIRE(two.zeros.size() == 2);
  const double im = std::sqrt(3.0 / 20.0) / 1.2;
  CHECK(std::abs(two.zeros[0] - cplx(1.25, -im)) < 1e-14);
  CHECK(std::abs(two.zeros[1] - cplx(1.25, im)) < 1e-14);
  CHECK(two.converged);

  CHECK_THROWS_AS(find_roots(coefficients(0, Alpha(1, 0))), DomainError);
}

TEST_CASE("root count, residuals and the left half-plane") {
  const struct {
    int n;
    Alpha a;
    Precision prec;
  } cases[] = {{10, Alpha(1, 0), Precision::double_precision()},
               {30, Alpha(2, -1), Precision::double_precision()},
               {60, Alpha(1, 1), Precision::automatic()},
               {40, Alpha(0.5, 1), Precision::extended(400)}};
  for (const auto& c : cases) {
    const ZeroSet zs = find_roots(coefficients(c.n, c.a), c.prec);
    CHECK(zs.converged);
    REQUIRE(static_cast<int>(zs.zeros.size()) == c.n);
    CHECK(zs.max_residual() <= 1e-10);
    for (const cplx& z : zs.zeros) CHECK(z.real() > 0.0);
    CHECK(std::is_sorted(zs.zeros.begin(), zs.zeros.end(), [](cplx x, cplx y) {
      return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
    }));
  }
}

TEST_CASE("real alpha gives a conjugation-closed zero set") {
  for (int n : {15, 40}) {
    const ZeroSet zs = find_roots(coefficients(n, Alpha(2, 0)));
    for (const cplx& z : zs.zeros) {
      double best = 1e300;
      for (const cplx& w : zs.zeros) best = std::min(best, std::abs(std::conj(z) - w));
      CHECK(best < 1e-9);
    }
  }
}

TEST_CASE("double mode escalates when forward errors are too large") {
  const ZeroSet zs = find_roots(coefficients(70, Alpha(1, 1)), Precision::double_precision());
  CHECK(zs.converged);
  CHECK(zs.escalated);
  CHECK(zs.bits_used > 53);
  CHECK(zs.max_residual() <= 1e-10);
}

TEST_CASE("solves are deterministic") {
  const Polynomial p = coefficients(35, Alpha(1, 1));
  const ZeroSet a = find_roots(p);
  const ZeroSet b = find_roots(p);
  CHECK(a.zeros == b.zeros);
  CHECK(a.residuals == b.residuals);
}

TEST_CASE("zero set JSON and CSV") {
  const ZeroSet zs = find_roots(coefficients(12, Alpha(1, 1)));
  const nlohmann::json j = zs;
  const ZeroSet back = j.get<ZeroSet>();
  CHECK(back.zeros == zs.zeros);
  CHECK(back.residuals == zs.residuals);
  CHECK(back.bits_used == zs.bits_used);
  CHECK(back.alpha == zs.alpha);

  std::istringstream csv(to_csv(zs));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "re,im,residual");
  int rows = 0;
  while (std::getline(csv, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 12);
}
