#include <genhm/coeffs.hpp>
#include <genhm/resub.hpp>

#include <string>

namespace genhm {
namespace {

void require_n(int n_power) {
  if (n_power < 2)
    throw DomainError("n_power must be >= 2, got " + std::to_string(n_power));
}

}  // namespace

CoeffTable airy_asym_coeffs(int m_max) {
  if (m_max < 0)
    throw DomainError("airy_asym_coeffs: m_max >= 0");
  CoeffTable t{0, Sector::AiryBase, {}};
  t.coeffs.reserve(static_cast<std::size_t>(m_max) + 1);
  BigRational a(1);
  t.coeffs.push_back(a);
  for (long m = 1; m <= m_max; ++m) {
    // a_m / a_{m-1} = -(6m-1)(6m-5) / (48 m)
    a *= BigRational(-(6 * m - 1) * (6 * m - 5), 48 * m);
    t.coeffs.push_back(a);
  }
  return t;
}

CoeffTable airy_power_coeffs(int n_power, int m_max) {
  require_n(n_power);
  if (m_max < 0)
    throw DomainError("airy_power_coeffs: m_max >= 0");
  const CoeffTable base = airy_asym_coeffs(m_max);
  RationalSeries b = series_pow(base.coeffs, n_power,
                                static_cast<std::size_t>(m_max) + 1);
  for (auto& q : b)
    q *= 2;
  return CoeffTable{n_power, Sector::AiryPowerB, std::move(b)};
}

CoeffTable d1_coeffs(int n_power, int m_max) {
  require_n(n_power);
  if (m_max < 0)
    throw DomainError("d1_coeffs: m_max >= 0");
  const long N = n_power;
  const CoeffTable b = airy_power_coeffs(n_power, m_max);

  CoeffTable t{n_power, Sector::PosInstanton1, {}};
  t.coeffs.assign(static_cast<std::size_t>(m_max) + 1, BigRational(0));
  const BigRational lead(N * N - 1);
  for (long m = 0; m <= m_max; ++m) {
    BigRational rhs = b.coeffs[static_cast<std::size_t>(m)];
    if (m >= 1)
      rhs -= BigRational(N * (N + 6 * m - 3), 2) * t.coeffs[static_cast<std::size_t>(m - 1)];
    if (m >= 2)
      rhs -= BigRational((N + 6 * m - 8) * (N + 6 * m - 4), 16) *
             t.coeffs[static_cast<std::size_t>(m - 2)];
    t.coeffs[static_cast<std::size_t>(m)] = rhs / lead;
  }

  // release gate: the independent substitution oracle must come back clean
  const int check_to = std::min(m_max, 48);
  CoeffTable head = t;
  head.coeffs.resize(static_cast<std::size_t>(check_to) + 1);
  if (auto bad = pos_instanton_residual(head))
    throw Error("d1_coeffs: substitution residual at half-order " +
                std::to_string(*bad));
  return t;
}

CoeffTable c_coeffs(int n_power, int l_max) {
  require_n(n_power);
  if (l_max < 0)
    throw DomainError("c_coeffs: l_max >= 0");
  const long N = n_power;
  const BigRational a(1, N - 1);  // exponent of the (-x/2) prefactor

  CoeffTable t{n_power, Sector::NegPerturbative, {}};
  t.coeffs.assign(static_cast<std::size_t>(l_max) + 1, BigRational(0));
  t.coeffs[0] = 1;
  RationalSeries p(static_cast<std::size_t>(l_max) + 1, BigRational(0));
  p[0] = 1;  // running C(s)^N

  for (long l = 1; l <= l_max; ++l) {
    // h_l = [C_{<l}^N]_l via l p_l = sum_i (i(N+1) - l) c_i p_{l-i}
    BigRational h(0);
    for (long i = 1; i < l; ++i) {
      const long w = i * (N + 1) - l;
      if (w != 0 && t.coeffs[static_cast<std::size_t>(i)] != 0)
        h += w * t.coeffs[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(l - i)];
    }
    h /= l;
    // matching at order l: c_{l-1} (a-3l+3)(a-3l+2) = (N-1) c_l + h_l
    const BigRational lhs =
        t.coeffs[static_cast<std::size_t>(l - 1)] * (a - (3 * l - 3)) * (a - (3 * l - 2));
    t.coeffs[static_cast<std::size_t>(l)] = (lhs - h) / (N - 1);
    p[static_cast<std::size_t>(l)] = N * t.coeffs[static_cast<std::size_t>(l)] + h;
  }

  if (auto bad = neg_perturbative_residual(t))
    throw Error("c_coeffs: substitution residual at order l=" +
                std::to_string(*bad));
  return t;
}

namespace {

// Shared movable-pole machinery: leading term A t^p with p = -2/(N-1),
// A^(N-1) = p(p-1)/2; correction coefficients solve
// [j(j-1) - N p(p-1)] a_j = forcing_j, resonance where the bracket is zero.
struct PoleAnalysis {
  bool integer_exponent = false;
  bool resonance_compatible = false;
  long p = 0;
  long resonance_j = 0;
  std::vector<Poly2> coeffs;  // a_j for j = p .. built order
};

PoleAnalysis pole_analysis(int n_power, int orders_past_resonance) {
  PoleAnalysis out;
  const long N = n_power;
  if ((2 % (N - 1)) != 0)
    return out;  // -2/(N-1) not an integer
  out.integer_exponent = true;
  const long p = -2 / (N - 1);
  out.p = p;
  // A^(N-1) = p(p-1)/2 has the positive solution used by the expansion
  const BigRational App = BigRational(p * (p - 1), 2);
  const BigRational A = (N == 3) ? BigRational(1) : App;  // N=2: A = 6/2 = 3
  // resonance: j(j-1) = N p(p-1)
  const long rhs = N * p * (p - 1);
  long jr = p + 1;
  while (jr * (jr - 1) != rhs)
    ++jr;
  out.resonance_j = jr;

  const long j_hi = jr + orders_past_resonance;
  const std::size_t len = static_cast<std::size_t>(j_hi - p + 1);
  std::vector<Poly2> y(len);
  y[0] = Poly2(A);

  auto poly_pow_coeff = [&](const std::vector<Poly2>& s, long order_from_lead,
                            long n) {
    // coefficient of t^(n*p + order_from_lead) in (sum s_i t^(p+i))^n,
    // dense convolution; n is small (2 or 3 here)
    std::vector<Poly2> acc(static_cast<std::size_t>(order_from_lead) + 1);
    acc[0] = Poly2(1);
    for (long rep = 0; rep < n; ++rep) {
      std::vector<Poly2> nxt(acc.size());
      for (std::size_t i = 0; i < acc.size(); ++i) {
        if (acc[i].is_zero())
          continue;
        for (std::size_t k = 0; i + k < nxt.size() && k < s.size(); ++k)
          nxt[i + k] += acc[i] * s[k];
      }
      acc = std::move(nxt);
    }
    return acc[static_cast<std::size_t>(order_from_lead)];
  };

  bool compatible = true;
  for (long j = p + 1; j <= j_hi; ++j) {
    // the equation fixing a_j sits at order t^(j-2); with a_j zeroed the
    // known part ("forcing") of y'' - 2y^N - (x0+t)y there is collected and
    // the full equation reads L(j) a_j + forcing = 0, with the y'' and
    // leading-power linearizations absorbed into L(j) = j(j-1) - N p(p-1)
    const long ord = j - 2;
    Poly2 forcing;
    // -2 y^N at t^(ord): order from lead = ord - N p (a_j entry still zero)
    const long rel = ord - N * p;
    if (rel >= 0) {
      Poly2 c = poly_pow_coeff(y, rel, N);
      c *= BigRational(-2);
      forcing += c;
    }
    // -(x0 + t) y: -x0 a_ord - a_{ord-1}
    if (ord >= p && ord - p < static_cast<long>(len))
      forcing -= Poly2::x0() * y[static_cast<std::size_t>(ord - p)];
    if (ord - 1 >= p && ord - 1 - p < static_cast<long>(len))
      forcing -= y[static_cast<std::size_t>(ord - 1 - p)];

    const BigRational L = BigRational(j * (j - 1)) - BigRational(rhs);
    if (j == jr) {
      if (!forcing.is_zero()) {
        compatible = false;
        break;
      }
      y[static_cast<std::size_t>(j - p)] = (N == 3) ? Poly2::h0() : Poly2(0);
    } else {
      Poly2 aj = forcing;
      aj *= BigRational(-1) / L;
      y[static_cast<std::size_t>(j - p)] = aj;
    }
  }
  out.resonance_compatible = compatible;
  out.coeffs = std::move(y);
  return out;
}

}  // namespace

PoleSeries pole_laurent_n3(int k_max) {
  if (k_max < 4)
    throw DomainError("pole_laurent_n3: k_max >= 4");
  PoleAnalysis pa = pole_analysis(3, k_max - 3);
  if (!pa.resonance_compatible)
    throw Error("pole_laurent_n3: order-3 resonance compatibility failed");
  PoleSeries s;
  s.k_max = k_max;
  s.j_min = -1;
  s.coeffs = std::move(pa.coeffs);
  return s;
}

bool pole_obstruction(int n_power) {
  require_n(n_power);
  const long N = n_power;
  if ((2 % (N - 1)) != 0)
    return true;  // leading exponent -2/(N-1) is not an integer
  PoleAnalysis pa = pole_analysis(n_power, 0);
  return !pa.resonance_compatible;
}

InstantonData instanton_data(int n_power) {
  require_n(n_power);
  InstantonData d;
  d.n_power = n_power;
  d.action_neg_sqrt_arg = n_power - 1;
  d.growth_rate_neg = BigRational(9, 4 * (n_power - 1));
  return d;
}

}  // namespace genhm
