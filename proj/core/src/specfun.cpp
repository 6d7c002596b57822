#include <genhm/specfun.hpp>

#include <cmath>
#include <map>
#include <mutex>

namespace genhm {
namespace {

constexpr int kMaxSeriesTerms = 4000;
constexpr double kLn10 = 2.302585092994046;

PrecFloat round_to(const PrecFloat& v, int digits10) {
  return make_float(v, digits10);
}

struct AiryPair {
  PrecFloat even;   // f or f' series
  PrecFloat odd;    // g or g' series
};

// Maclaurin series f, g of DLMF 9.4 and their derivatives, summed at the
// caller's working precision. The series are entire; convergence is
// monitored against the largest intermediate term so that cancellation is
// charged to the guard digits chosen by the caller.
void airy_series_fg(const PrecFloat& x, int wp, PrecFloat& f, PrecFloat& fp,
                    PrecFloat& g, PrecFloat& gp) {
  const PrecFloat x2 = x * x;
  const PrecFloat x3 = x2 * x;
  const PrecFloat cutoff = pow10(-(wp + 3), wp);

  // f  = sum t_k,   t_0 = 1,       t_k = t_{k-1} x^3 / ((3k)(3k-1))
  // g  = sum s_k,   s_0 = x,       s_k = s_{k-1} x^3 / ((3k+1)(3k))
  // f' = sum u_k,   u_0 = 0, u_1 = x^2/2,  u_k = u_{k-1} x^3 / ((3k-1)(3k-3))
  // g' = sum v_k,   v_0 = 1,       v_k = v_{k-1} x^3 / ((3k)(3k-2))
  PrecFloat t = make_float(1L, wp);
  PrecFloat s = make_float(x, wp);
  PrecFloat u = make_float(x2, wp) / 2;
  PrecFloat v = make_float(1L, wp);
  f = t;
  g = s;
  fp = u;
  gp = v;
  PrecFloat peak = make_float(1L, wp);
  for (int k = 1; k < kMaxSeriesTerms; ++k) {
    t *= x3 / ((3 * k) * (3 * k - 1));
    s *= x3 / ((3 * k + 1) * (3 * k));
    v *= x3 / ((3 * k) * (3 * k - 2));
    f += t;
    g += s;
    gp += v;
    if (k >= 2) {  // u_1 seeded fp before the loop
      u *= x3 / ((3 * k - 1) * (3 * k - 3));
      fp += u;
    }
    PrecFloat m = abs(t);
    if (abs(s) > m) m = abs(s);
    if (abs(u) > m) m = abs(u);
    if (abs(v) > m) m = abs(v);
    if (m > peak) peak = m;
    if (m < cutoff * peak)
      return;
  }
  throw PrecisionUnreachable("airy series did not converge within term cap");
}

// u_k, v_k of the large-|x| expansions, DLMF 9.7: u_0 = v_0 = 1,
// u_k = u_{k-1} (6k-1)(6k-5)/(72k), v_k = u_k (6k+1)/(1-6k).
// Sums are truncated at the smallest term (the series are divergent).
struct AsymSums {
  PrecFloat u_plus, u_minus;    // sum u_k w^k, sum (-1)^k u_k w^k
  PrecFloat v_plus, v_minus;
  PrecFloat u_even, u_odd;      // sum (-1)^k u_{2k} z^{2k}, sum (-1)^k u_{2k+1} z^{2k+1}
  PrecFloat v_even, v_odd;
};

AsymSums airy_asym_sums(const PrecFloat& inv_xi, int wp) {
  AsymSums out;
  out.u_plus = make_float(1L, wp);
  out.u_minus = make_float(1L, wp);
  out.v_plus = make_float(1L, wp);
  out.v_minus = make_float(1L, wp);
  out.u_even = make_float(1L, wp);
  out.u_odd = make_float(0L, wp);
  out.v_even = make_float(1L, wp);
  out.v_odd = make_float(0L, wp);

  PrecFloat uterm = make_float(1L, wp);  // u_k * inv_xi^k
  PrecFloat prev = abs(uterm);
  const PrecFloat cutoff = pow10(-(wp + 2), wp);
  for (int k = 1; k < kMaxSeriesTerms; ++k) {
    uterm *= inv_xi * (6 * k - 1) * (6 * k - 5);
    uterm /= 72 * k;
    PrecFloat vterm = uterm * (6 * k + 1);
    vterm /= (1 - 6 * k);
    if (abs(uterm) >= prev)
      break;  // past the smallest term; stop at optimal truncation
    prev = abs(uterm);
    const int sgn = (k % 2 == 0) ? 1 : -1;
    out.u_plus += uterm;
    out.v_plus += vterm;
    out.u_minus += sgn * uterm;
    out.v_minus += sgn * vterm;
    // oscillatory regroupings: index parity in k, sign (-1)^(k/2)
    const int sgn2 = (k / 2 % 2 == 0) ? 1 : -1;
    if (k % 2 == 0) {
      out.u_even += sgn2 * uterm;
      out.v_even += sgn2 * vterm;
    } else {
      out.u_odd += sgn2 * uterm;
      out.v_odd += sgn2 * vterm;
    }
    if (abs(uterm) < cutoff)
      break;
  }
  return out;
}

// Per-precision constants shared by the series branch.
struct SeriesConsts {
  PrecFloat ai0;       // Ai(0)  = 3^(-2/3)/Gamma(2/3)
  PrecFloat neg_aip0;  // -Ai'(0) = 3^(-1/3)/Gamma(1/3)
  PrecFloat sqrt3;
};

const SeriesConsts& series_consts(int wp) {
  static std::mutex mu;
  static std::map<int, SeriesConsts> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(wp);
  if (it != cache.end())
    return it->second;
  SeriesConsts c;
  PrecFloat third = make_float(1L, wp) / 3;
  PrecFloat g13 = make_float(wp), g23 = make_float(wp);
  PrecFloat t1 = third, t2 = 2 * third;
  mpfr_gamma(g13.backend().data(), t1.backend().data(), MPFR_RNDN);
  mpfr_gamma(g23.backend().data(), t2.backend().data(), MPFR_RNDN);
  c.ai0 = pow(make_float(3L, wp), -2 * third) / g23;
  c.neg_aip0 = pow(make_float(3L, wp), -third) / g13;
  c.sqrt3 = sqrt(make_float(3L, wp));
  return cache.emplace(wp, std::move(c)).first->second;
}

}  // namespace

namespace detail {

double airy_asymptotic_threshold(const PrecContext& ctx) {
  // Optimal truncation of the asymptotic series leaves a relative error of
  // order exp(-2 xi); demand 2 xi >= (digits+4) ln 10.
  const double xi_req = 0.5 * (ctx.digits + 4) * kLn10;
  return std::pow(1.5 * xi_req, 2.0 / 3.0);
}

AiryValues airy_series(const PrecFloat& x, const PrecContext& ctx) {
  const double xd = x.convert_to<double>();
  const double axd = std::fabs(xd);
  const double xi = (2.0 / 3.0) * std::pow(axd, 1.5);
  // Cancellation: the series terms peak near exp(xi) for x < 0 and the
  // result for x > 0 is as small as exp(-xi) against f,g ~ exp(+xi).
  const double loss = (xd > 0 ? 2.0 * xi : xi) / kLn10;
  const int guard = static_cast<int>(loss) + 12;
  if (guard > 6000)
    throw PrecisionUnreachable("airy_eval: series guard digits exceed cap at x=" +
                               std::to_string(xd));
  const int wp = ctx.digits + 4 + guard;

  // estimated term count: terms decay once (3k)^2 > |x|^3; the tail then
  // needs about wp*ln10 further e-foldings.
  const double kstar = std::pow(axd, 1.5) / 3.0 + 8;
  if (3.0 * kstar + wp > 3.0 * kMaxSeriesTerms)
    throw PrecisionUnreachable("airy_eval: series depth cap at x=" + std::to_string(xd));

  PrecFloat f, fp, g, gp;
  airy_series_fg(make_float(x, wp), wp, f, fp, g, gp);

  const SeriesConsts& sc = series_consts(wp);
  const PrecFloat& c1 = sc.ai0;
  const PrecFloat& c2 = sc.neg_aip0;
  const PrecFloat& s3 = sc.sqrt3;

  AiryValues out;
  out.ai = round_to(c1 * f - c2 * g, ctx.digits + 6);
  out.ai_prime = round_to(c1 * fp - c2 * gp, ctx.digits + 6);
  out.bi = round_to(s3 * (c1 * f + c2 * g), ctx.digits + 6);
  out.bi_prime = round_to(s3 * (c1 * fp + c2 * gp), ctx.digits + 6);
  return out;
}

AiryValues airy_asymptotic(const PrecFloat& x, const PrecContext& ctx) {
  const int wp = ctx.digits + 12;
  const PrecFloat ax = abs(make_float(x, wp));
  const PrecFloat sq = sqrt(ax);
  const PrecFloat xi = 2 * ax * sq / 3;
  const PrecFloat root4 = sqrt(sq);  // |x|^(1/4)
  const PrecFloat spi = sqrt(const_pi(wp));
  const AsymSums s = airy_asym_sums(1 / xi, wp);

  AiryValues out;
  if (x > 0) {
    const PrecFloat em = exp(-xi);
    const PrecFloat ep = 1 / em;
    out.ai = em / (2 * spi * root4) * s.u_minus;
    out.ai_prime = -root4 * em / (2 * spi) * s.v_minus;
    out.bi = ep / (spi * root4) * s.u_plus;
    out.bi_prime = root4 * ep / spi * s.v_plus;
  } else {
    // DLMF 9.7.9-9.7.12 with chi = xi - pi/4.
    const PrecFloat chi = xi - const_pi(wp) / 4;
    const PrecFloat sc = sin(chi);
    const PrecFloat cc = cos(chi);
    out.ai = (cc * s.u_even + sc * s.u_odd) / (spi * root4);
    out.ai_prime = root4 / spi * (sc * s.v_even - cc * s.v_odd);
    out.bi = (-sc * s.u_even + cc * s.u_odd) / (spi * root4);
    out.bi_prime = root4 / spi * (cc * s.v_even + sc * s.v_odd);
  }
  out.ai = round_to(out.ai, ctx.digits + 6);
  out.ai_prime = round_to(out.ai_prime, ctx.digits + 6);
  out.bi = round_to(out.bi, ctx.digits + 6);
  out.bi_prime = round_to(out.bi_prime, ctx.digits + 6);
  return out;
}

}  // namespace detail

AiryValues airy_eval(const PrecFloat& x, const PrecContext& ctx) {
  ctx.validate();
  if (mpfr_number_p(x.backend().data()) == 0 || abs(x) > 10000)
    throw DomainError("airy_eval: require finite |x| <= 1e4");
  const double threshold = detail::airy_asymptotic_threshold(ctx);
  if (std::fabs(x.convert_to<double>()) >= threshold)
    return detail::airy_asymptotic(x, ctx);
  return detail::airy_series(x, ctx);
}

AiryValues airy_eval(double x, const PrecContext& ctx) {
  return airy_eval(make_float(x, ctx.digits + 4), ctx);
}

PrecFloat airy_prime_first_zero(const PrecContext& ctx) {
  ctx.validate();
  static std::mutex mu;
  static std::map<int, PrecFloat> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(ctx.digits);
    if (it != memo.end())
      return it->second;
  }

  const int wp = ctx.digits + 8;
  // Bracket in [-1.1, -0.9], bisect a few times, then Newton with
  // Ai''(x) = x Ai(x).
  PrecFloat lo = make_float(-1.1, wp);
  PrecFloat hi = make_float(-0.9, wp);
  const PrecContext wctx{wp};
  PrecFloat flo = airy_eval(lo, wctx).ai_prime;
  for (int i = 0; i < 12; ++i) {
    PrecFloat mid = (lo + hi) / 2;
    PrecFloat fm = airy_eval(mid, wctx).ai_prime;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  PrecFloat x = (lo + hi) / 2;
  const PrecFloat tol = pow10(-(ctx.digits + 4), wp);
  for (int i = 0; i < 64; ++i) {
    AiryValues v = airy_eval(x, wctx);
    PrecFloat step = v.ai_prime / (x * v.ai);
    x -= step;
    if (abs(step) < tol)
      break;
  }
  PrecFloat out = make_float(x, ctx.digits + 6);
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(ctx.digits, out);
  return out;
}

PrecFloat gamma_eval(const PrecFloat& z, const PrecContext& ctx) {
  ctx.validate();
  if (z <= 0 && z == floor(z))
    throw DomainError("gamma_eval: pole at nonpositive integer z");
  const int wp = ctx.digits + 8;
  PrecFloat r = make_float(wp);
  PrecFloat zz = make_float(z, wp);
  mpfr_gamma(r.backend().data(), zz.backend().data(), MPFR_RNDN);
  return round_to(r, ctx.digits + 6);
}

PrecFloat gamma_eval(double z, const PrecContext& ctx) {
  return gamma_eval(make_float(z, ctx.digits + 8), ctx);
}

PrecFloat lgamma_eval(const PrecFloat& z, const PrecContext& ctx) {
  ctx.validate();
  if (z <= 0)
    throw DomainError("lgamma_eval: require z > 0");
  const int wp = ctx.digits + 8;
  PrecFloat r = make_float(wp);
  PrecFloat zz = make_float(z, wp);
  int sign = 0;
  mpfr_lgamma(r.backend().data(), &sign, zz.backend().data(), MPFR_RNDN);
  return round_to(r, ctx.digits + 6);
}

}  // namespace genhm
