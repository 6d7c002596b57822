#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <genhm/series.hpp>

using namespace genhm;

TEST_CASE("cauchy product") {
  RationalSeries a{1, 1};           // 1 + u
  RationalSeries sq = series_mul(a, a, 4);
  CHECK(sq == RationalSeries{1, 2, 1, 0});
  RationalSeries b{BigRational(1), BigRational(-1, 2), BigRational(1, 3)};
  RationalSeries ab = series_mul(a, b, 3);
  CHECK(ab[0] == 1);
  CHECK(ab[1] == BigRational(1, 2));
  CHECK(ab[2] == BigRational(-1, 6));
}

TEST_CASE("series power: recursion route equals binary route") {
  RationalSeries a{BigRational(1), BigRational(2, 3), BigRational(-1, 5),
                   BigRational(7, 11), BigRational(0), BigRational(3, 2)};
  for (long n : {0L, 1L, 2L, 3L, 7L}) {
    RationalSeries p = series_pow(a, n, 9);
    RationalSeries q = series_pow_binary(a, n, 9);
    CHECK(p == q);
  }
  CHECK_THROWS_AS(series_pow(RationalSeries{0, 1}, 2, 4), DomainError);
}

TEST_CASE("half-power series algebra") {
  // x^(1/2) * x^(-3/2) = x^(-1)
  HalfSeries a = HalfSeries::monomial(2, 1, 10);
  HalfSeries b = HalfSeries::monomial(BigRational(1, 2), -3, 10);
  HalfSeries p = a * b;
  CHECK(p.at(-2) == 1);
  // derivative: d/dx [x^(3/2)] = (3/2) x^(1/2)
  HalfSeries c = HalfSeries::monomial(1, 3, 10);
  CHECK(c.derivative().at(1) == BigRational(3, 2));
  // sum with mixed supports
  HalfSeries s = a + b;
  CHECK(s.at(1) == 2);
  CHECK(s.at(-3) == BigRational(1, 2));
  CHECK(s.at(-1) == 0);
}

TEST_CASE("half-power series truncation bound propagates through products") {
  HalfSeries a = HalfSeries::monomial(1, 0, 10);
  HalfSeries b = HalfSeries::monomial(1, 2, 6);
  HalfSeries p = a * b;
  // min(a.valid + b.lo, b.valid + a.lo) = min(12, 6)
  CHECK(p.valid() == 6);
  CHECK(p.at(2) == 1);
}

TEST_CASE("half-power series power") {
  // (1 + x^(-3/2))^3 truncated
  HalfSeries s = HalfSeries::monomial(1, 0, 12) +
                 HalfSeries::monomial(1, -3, 12);
  HalfSeries cube = s.pow(3);
  CHECK(cube.at(0) == 1);
  CHECK(cube.at(-3) == 3);
  CHECK(cube.at(-6) == 3);
  CHECK(cube.at(-9) == 1);
}

TEST_CASE("bivariate polynomials") {
  Poly2 p = Poly2::x0() * BigRational(-1, 6);
  Poly2 q = Poly2::h0();
  Poly2 r = p * p + q;
  CHECK(r.to_string() == "h0 + 1/36*x0^2");
  CHECK(r.eval(6, 2) == 3);
  Poly2 z = p - p;
  CHECK(z.is_zero());
  CHECK(z.to_string() == "0");
  CHECK((Poly2(BigRational(1, 2)) * Poly2(2)).to_string() == "1");
}
