#include <genhm/resub.hpp>

namespace genhm {
namespace {

// The positive-side checks work in w = x^(-1/2): descending powers of x
// become ascending powers of w, which is the truncation direction
// HalfSeries tracks. A term c w^e stands for c x^(-e/2).

// d/dx maps c w^e to -(e/2) c w^(e+2).
HalfSeries ddx(const HalfSeries& s) {
  HalfSeries out = HalfSeries::zero(s.valid() + 2);
  for (long e = s.lo(); e <= s.valid(); ++e) {
    const BigRational& q = s.at(e);
    if (q != 0)
      out += HalfSeries::monomial(q * BigRational(-e, 2), e + 2, s.valid() + 2);
  }
  return out;
}

// F from a coefficient list: sum coeffs[m] w^(e0 + 3m); intermediate
// w-orders are known zeros, so the trust bound extends two past the last
// stored order.
HalfSeries pack3(const std::vector<BigRational>& coeffs, long e0) {
  const long vb = e0 + 3 * static_cast<long>(coeffs.size() - 1) + 2;
  HalfSeries s = HalfSeries::zero(vb);
  for (std::size_t m = 0; m < coeffs.size(); ++m)
    if (coeffs[m] != 0)
      s += HalfSeries::monomial(coeffs[m], e0 + 3 * static_cast<long>(m), vb);
  return s;
}

// residual of (E^N F)'' - x E^N F - E^N * forcing, divided through by
// E^N = exp(-(2N/3) x^(3/2)) / (2 sqrt(pi))^N x^(N/4):
//   F'' + 2 phi' F' + (phi'' + phi'^2 - x) F - forcing
// with phi = log E^N, so
//   2 phi'            = -2N x^(1/2) - (N/2) x^(-1)
//   phi'' + phi'^2 - x = (N^2-1) x + (N(N-1)/2) x^(-1/2) + ((N^2+4N)/16) x^(-2)
HalfSeries conjugated_residual(const HalfSeries& F, long N,
                               const HalfSeries& forcing) {
  const long vb = F.valid();
  HalfSeries two_phi = HalfSeries::monomial(BigRational(-2 * N), -1, vb);
  two_phi += HalfSeries::monomial(BigRational(-N, 2), 2, vb);
  HalfSeries weight = HalfSeries::monomial(BigRational(N * N - 1), -2, vb);
  weight += HalfSeries::monomial(BigRational(N * (N - 1), 2), 1, vb);
  weight += HalfSeries::monomial(BigRational(N * (N + 4), 16), 4, vb);

  HalfSeries r = ddx(ddx(F));
  r += two_phi * ddx(F);
  r += weight * F;
  r -= forcing;
  return r;
}

std::optional<long> first_nonzero(const HalfSeries& r) {
  for (long e = r.lo(); e <= r.valid(); ++e)
    if (r.at(e) != 0)
      return e;
  return std::nullopt;
}

}  // namespace

std::optional<long> airy_base_residual(const CoeffTable& base) {
  if (base.sector != Sector::AiryBase)
    throw DomainError("airy_base_residual: wrong sector");
  HalfSeries F0 = pack3(base.coeffs, 0);
  HalfSeries r = conjugated_residual(F0, 1, HalfSeries::zero(F0.valid()));
  return first_nonzero(r);
}

std::optional<long> pos_instanton_residual(const CoeffTable& d1) {
  if (d1.sector != Sector::PosInstanton1)
    throw DomainError("pos_instanton_residual: wrong sector");
  const long N = d1.n_power;
  const int m_max = static_cast<int>(d1.coeffs.size()) - 1;

  // F1 = x^(-1) sum d_m x^(-3m/2): w-orders 2 + 3m
  HalfSeries F1 = pack3(d1.coeffs, 2);
  // forcing 2 F0^N, regenerated from the closed-form Airy coefficients
  const CoeffTable base = airy_asym_coeffs(m_max + 4);
  HalfSeries F0 = pack3(base.coeffs, 0);
  HalfSeries forcing = F0.pow(N);
  forcing *= BigRational(2);
  HalfSeries r = conjugated_residual(F1, N, forcing);
  return first_nonzero(r);
}

std::optional<long> neg_perturbative_residual(const CoeffTable& c) {
  if (c.sector != Sector::NegPerturbative)
    throw DomainError("neg_perturbative_residual: wrong sector");
  const long N = c.n_power;
  const BigRational a(1, N - 1);
  const std::size_t len = c.coeffs.size();

  // In u = -x with y = (u/2)^a C(u^-3) the equation collapses to
  //   (a-3l)(a-3l-1) c_l = g_{l+1},  (C^N - C) = sum_{l>=1} g_l u^(-3l),
  // with C^N recomputed here by binary powering (the generator uses the
  // first-order recursion instead).
  const RationalSeries P = series_pow_binary(c.coeffs, N, len);
  for (std::size_t l = 1; l < len; ++l) {
    const BigRational g = P[l] - c.coeffs[l];
    const BigRational lhs = c.coeffs[l - 1] *
                            (a - (3 * static_cast<long>(l) - 3)) *
                            (a - (3 * static_cast<long>(l) - 2));
    if (lhs != g)
      return static_cast<long>(l);
  }
  return std::nullopt;
}

std::optional<long> pole_residual(const PoleSeries& series) {
  const long jmin = series.j_min;
  const long jmax = series.k_max;
  const long n = jmax - jmin + 1;
  // y^3 by two dense convolutions
  std::vector<Poly2> y = series.coeffs;
  std::vector<Poly2> y2(static_cast<std::size_t>(2 * n - 1));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      y2[static_cast<std::size_t>(i + j)] += y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
  std::vector<Poly2> y3(static_cast<std::size_t>(3 * n - 2));
  for (long i = 0; i < 2 * n - 1; ++i)
    for (long j = 0; j < n; ++j)
      y3[static_cast<std::size_t>(i + j)] += y2[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];

  // residual trusted through t^(k_max - 2): higher orders would involve
  // coefficients beyond the truncation
  for (long ord = jmin - 2; ord <= jmax - 2; ++ord) {
    Poly2 r;
    const long m = ord + 2;  // y'' contribution from a_m
    if (m >= jmin && m <= jmax)
      r += y[static_cast<std::size_t>(m - jmin)] * BigRational(m * (m - 1));
    const long rel = ord - 3 * jmin;  // y^3 offset
    if (rel >= 0 && rel < 3 * n - 2) {
      Poly2 c = y3[static_cast<std::size_t>(rel)];
      c *= BigRational(-2);
      r += c;
    }
    if (ord >= jmin && ord <= jmax)
      r -= Poly2::x0() * y[static_cast<std::size_t>(ord - jmin)];
    if (ord - 1 >= jmin && ord - 1 <= jmax)
      r -= y[static_cast<std::size_t>(ord - 1 - jmin)];
    if (!r.is_zero())
      return ord;
  }
  return std::nullopt;
}

}  // namespace genhm
