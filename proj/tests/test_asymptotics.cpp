#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <genhm/asymptotics.hpp>

using namespace genhm;

namespace {

double rel_err(const PrecFloat& got, double want) {
  return (abs(got - want) / std::fabs(want)).convert_to<double>();
}

}  // namespace

TEST_CASE("richardson transform") {
  const int wp = 40;
  // exact on 1 + 3/m at order 1
  std::vector<PrecFloat> s1;
  for (long m = 1; m <= 12; ++m)
    s1.push_back(make_float(1L, wp) + make_float(3L, wp) / m);
  CHECK(abs(richardson(s1, 1) - 1) < 1e-35);

  // exact on 1 + 1/m + 1/m^2 at order 2 from 30 terms
  std::vector<PrecFloat> s2;
  for (long m = 1; m <= 30; ++m)
    s2.push_back(make_float(1L, wp) + make_float(1L, wp) / m +
                 make_float(1L, wp) / (m * m));
  CHECK(abs(richardson(s2, 2) - 1) < 1e-12);

  // degree-4 polynomial in 1/m killed exactly at order 4
  std::vector<PrecFloat> s4;
  for (long m = 5; m <= 40; ++m) {
    PrecFloat im = make_float(1L, wp) / m;
    s4.push_back(2 - 3 * im + im * im - 7 * im * im * im * im);
  }
  CHECK(abs(richardson(s4, 4, 5) - 2) < 1e-30);

  CHECK_THROWS_AS(richardson(s1, 20), DomainError);
  CHECK_THROWS_AS(richardson(s1, 0), DomainError);
}

TEST_CASE("one-factorial fit, N=4") {
  PrecContext ctx{32};
  LargeOrderFit fit = fit_one_factorial(d1_coeffs(4, 150), ctx);
  CHECK(fit.model == FitModel::OneFactorial);
  CHECK(rel_err(fit.rate_A, 0.75) < 1e-4 / 0.75);
  CHECK(rel_err(fit.constant_S, 0.31830988618367) < 1e-3);   // 1/pi
  CHECK(rel_err(fit.subleading_beta, 61.0 / 18.0) < 1e-2);
  CHECK(abs(fit.offset - (-1)) < 0.02);                       // Gamma(m) model
  CHECK(fit.ok());
  // ratio-normalization sequence limit: d_m (-1)^m (4/3)^(m-1) pi / Gamma(m)
  // accelerates to 1, i.e. S = 1/pi
  CHECK(rel_err(fit.constant_S * const_pi(40), 1.0) < 1e-3);
}

TEST_CASE("one-factorial fit, N=2 special growth") {
  PrecContext ctx{32};
  LargeOrderFit fit = fit_one_factorial(d1_coeffs(2, 150), ctx);
  CHECK(rel_err(fit.rate_A, 1.5) < 1e-4 / 1.5);
  // model switches to the Gamma(m + 5/6) family, offset -1/6
  CHECK(abs(fit.offset - make_float(-1.0 / 6.0, 40)) < 2e-3);
  // growth constant in this normalization (equals 4.9161362.../pi; the
  // acceptance suite checks the pi-scaled published form)
  CHECK(rel_err(fit.constant_S, 1.5648548) < 1e-3);
  CHECK(fit.ok());
}

TEST_CASE("one-factorial input validation") {
  PrecContext ctx{32};
  CHECK_THROWS_AS(fit_one_factorial(d1_coeffs(4, 50), ctx), DomainError);
  CoeffTable fake{3, Sector::PosInstanton1, {}};
  for (int i = 0; i < 120; ++i)
    fake.coeffs.push_back(BigRational(1));  // non-alternating
  CHECK_THROWS_AS(fit_one_factorial(fake, ctx), DomainError);
  CHECK_THROWS_AS(fit_one_factorial(c_coeffs(3, 90), ctx), DomainError);
}

TEST_CASE("two-factorial fit, N=3..5") {
  PrecContext ctx{32};
  const double S_want[] = {0.1466323, 0.12985376, 0.1086460};
  const double off_want[] = {-0.5, -7.0 / 18.0, -1.0 / 3.0};
  for (int n : {3, 4, 5}) {
    LargeOrderFit fit = fit_two_factorial(c_coeffs(n, 80), ctx);
    const double A_want = 9.0 / (4.0 * (n - 1));
    CHECK(rel_err(fit.rate_A, A_want) < 1e-4 / A_want);
    CHECK(rel_err(fit.constant_S, S_want[n - 3]) < 5e-3);
    CHECK(abs(fit.offset - make_float(off_want[n - 3], 40)) < 0.02);
    CHECK(borel_consistency(n, fit) < 1e-4);
    CHECK(fit.ok());
  }
}

TEST_CASE("two-factorial rejections") {
  PrecContext ctx{32};
  CHECK_THROWS_AS(fit_two_factorial(c_coeffs(2, 60), ctx), ZeroTailError);
  CHECK_THROWS_AS(fit_two_factorial(c_coeffs(3, 20), ctx), DomainError);
  CHECK_THROWS_AS(fit_two_factorial(d1_coeffs(3, 90), ctx), DomainError);
}

TEST_CASE("fit stability in the richardson order") {
  PrecContext ctx{32};
  CoeffTable c = c_coeffs(3, 80);
  LargeOrderFit f6 = fit_two_factorial(c, ctx, 6);
  LargeOrderFit f7 = fit_two_factorial(c, ctx, 7);
  PrecFloat change = abs(f7.constant_S - f6.constant_S) / abs(f6.constant_S);
  CHECK(change < 2 * (f6.residual + f7.residual) + PrecFloat(1e-14));
}

TEST_CASE("borel consistency recognizes the exact rate") {
  LargeOrderFit fit;
  fit.model = FitModel::TwoFactorial;
  fit.n_power = 5;
  fit.rate_A = make_float(BigRational(9, 16), 38);
  CHECK(borel_consistency(5, fit) == 0);
  fit.rate_A = make_float(0.5626, 38);
  CHECK(borel_consistency(5, fit) > 0);
}
