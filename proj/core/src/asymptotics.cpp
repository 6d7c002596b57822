#include <genhm/asymptotics.hpp>
#include <genhm/specfun.hpp>

#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

namespace genhm {
namespace {

int working_digits(const PrecContext& ctx) {
  return std::max(ctx.digits, 32) + 16;
}

PrecFloat log_abs(const BigRational& q, int wp) {
  return log(abs(make_float(q, wp)));
}

PrecFloat lgamma_wp(const PrecFloat& z, int wp) {
  PrecFloat r = make_float(wp);
  PrecFloat zz = make_float(z, wp);
  int sign = 0;
  mpfr_lgamma(r.backend().data(), &sign, zz.backend().data(), MPFR_RNDN);
  return r;
}

/// Nearest small-denominator rational within tol, if any.
std::optional<BigRational> snap_rational(const PrecFloat& v, double tol,
                                         long max_den) {
  for (long q = 1; q <= max_den; ++q) {
    PrecFloat pq = v * q;
    PrecFloat p = round(pq);
    if (abs(pq - p) < tol * q) {
      long pl = p.convert_to<long>();
      return BigRational(pl, q);
    }
  }
  return std::nullopt;
}

struct TailView {
  long m_first = 0;
  std::vector<PrecFloat> v;
};

}  // namespace

PrecFloat richardson(std::span<const PrecFloat> seq, int order, long m_first) {
  if (order < 1)
    throw DomainError("richardson: order >= 1");
  if (static_cast<long>(seq.size()) <= order)
    throw DomainError("richardson: need more than `order` entries, got " +
                      std::to_string(seq.size()));
  std::vector<PrecFloat> cur(seq.begin(), seq.end());
  for (int j = 1; j <= order; ++j) {
    for (std::size_t i = 0; i + j < cur.size(); ++i) {
      const long m = m_first + static_cast<long>(i);
      cur[i] = ((m + j) * cur[i + 1] - m * cur[i]) / j;
    }
  }
  return cur[cur.size() - 1 - static_cast<std::size_t>(order)];
}

LargeOrderFit fit_one_factorial(const CoeffTable& table, const PrecContext& ctx,
                                int richardson_order) {
  ctx.validate();
  if (table.sector != Sector::PosInstanton1)
    throw DomainError("fit_one_factorial: expects a PosInstanton1 table");
  const long m_max = static_cast<long>(table.coeffs.size()) - 1;
  if (m_max + 1 < 80)
    throw DomainError("fit_one_factorial: need >= 80 coefficients");
  for (long m = 1; m <= m_max; ++m) {
    const auto& prev = table.coeffs[static_cast<std::size_t>(m - 1)];
    const auto& curc = table.coeffs[static_cast<std::size_t>(m)];
    if (prev == 0 || curc == 0 || (prev > 0) == (curc > 0))
      throw DomainError("fit_one_factorial: input does not alternate in sign");
  }

  const int wp = working_digits(ctx);
  const int order = richardson_order;
  const long L = std::min(m_max - 1, static_cast<long>(24 + 2 * order));
  const long m0 = m_max - L + 1;  // ratio entries m = m0 .. m_max

  // rate A from |d_m / d_{m-1}| / m
  std::vector<PrecFloat> ratio;
  ratio.reserve(static_cast<std::size_t>(L));
  for (long m = m0; m <= m_max; ++m) {
    BigRational r = table.coeffs[static_cast<std::size_t>(m)] /
                    table.coeffs[static_cast<std::size_t>(m - 1)];
    r /= -m;
    ratio.push_back(make_float(r, wp));
  }
  const PrecFloat A = richardson(ratio, order, m0);
  const PrecFloat A_prev = richardson(ratio, order - 1, m0);
  auto A_snap = snap_rational(A, 1e-7, 64);
  const PrecFloat A_use = A_snap ? make_float(*A_snap, wp) : A;
  const PrecFloat logA = log(A_use);

  // gamma offset theta from m * (s_{m+1} - s_m),
  // s_m = log|d_m| - lgamma(m) - (m-1) log A
  std::vector<PrecFloat> s;
  s.reserve(static_cast<std::size_t>(L) + 1);
  for (long m = m0 - 1; m <= m_max; ++m)
    s.push_back(log_abs(table.coeffs[static_cast<std::size_t>(m)], wp) -
                lgamma_wp(make_float(m, wp), wp) - (m - 1) * logA);
  std::vector<PrecFloat> theta_seq;
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    theta_seq.push_back((m0 - 1 + static_cast<long>(i)) * (s[i + 1] - s[i]));
  const PrecFloat theta = richardson(theta_seq, order, m0 - 1);
  auto theta_snap = snap_rational(theta, 2e-3, 6);
  const PrecFloat theta_use =
      theta_snap ? make_float(*theta_snap, wp) : theta;

  // constant S from the accelerated normalized sequence
  std::vector<PrecFloat> sigma;
  for (long m = m0; m <= m_max; ++m) {
    PrecFloat lg = lgamma_wp(make_float(m, wp) + theta_use, wp);
    sigma.push_back(exp(log_abs(table.coeffs[static_cast<std::size_t>(m)], wp) -
                        (m - 1) * logA - lg));
  }
  const PrecFloat S = richardson(sigma, order, m0);
  const PrecFloat S_prev = richardson(sigma, order - 1, m0);

  // subleading beta from (m-1)(sigma_m / S - 1), a sequence in (m-1)
  std::vector<PrecFloat> beta_seq;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const long m = m0 + static_cast<long>(i);
    beta_seq.push_back((m - 1) * (sigma[i] / S - 1));
  }
  const PrecFloat beta = richardson(beta_seq, order, m0 - 1);

  LargeOrderFit fit;
  fit.model = FitModel::OneFactorial;
  fit.n_power = table.n_power;
  fit.rate_A = make_float(A, ctx.digits + 6);
  fit.constant_S = make_float(S, ctx.digits + 6);
  fit.offset = make_float(theta - 1, ctx.digits + 6);
  fit.subleading_beta = make_float(beta, ctx.digits + 6);
  fit.richardson_order = order;
  PrecFloat res = abs(S - S_prev) / abs(S) + abs(A - A_prev) / abs(A);
  fit.residual = make_float(res, ctx.digits + 6);
  return fit;
}

LargeOrderFit fit_two_factorial(const CoeffTable& table, const PrecContext& ctx,
                                int richardson_order) {
  ctx.validate();
  if (table.sector != Sector::NegPerturbative)
    throw DomainError("fit_two_factorial: expects a NegPerturbative table");
  const long l_max = static_cast<long>(table.coeffs.size()) - 1;
  if (l_max + 1 < 40)
    throw DomainError("fit_two_factorial: need >= 40 coefficients");
  const bool zero_tail =
      std::all_of(table.coeffs.begin() + 1, table.coeffs.end(),
                  [](const BigRational& q) { return q == 0; });
  if (zero_tail)
    throw ZeroTailError("fit_two_factorial: zero perturbative tail (N=2)");
  for (long l = std::max(2L, l_max - 30); l <= l_max; ++l) {
    const auto& prev = table.coeffs[static_cast<std::size_t>(l - 1)];
    const auto& curc = table.coeffs[static_cast<std::size_t>(l)];
    if (prev == 0 || curc == 0 || (prev > 0) != (curc > 0))
      throw DomainError("fit_two_factorial: tail sign not eventually fixed");
  }

  const int wp = working_digits(ctx);
  const int order = richardson_order;
  const long L = std::min(l_max - 1, static_cast<long>(20 + 2 * order));
  const long l0 = l_max - L + 1;

  // rate A from (c_l / c_{l-1}) / (2l (2l-1))
  std::vector<PrecFloat> ratio;
  for (long l = l0; l <= l_max; ++l) {
    BigRational r = table.coeffs[static_cast<std::size_t>(l)] /
                    table.coeffs[static_cast<std::size_t>(l - 1)];
    r /= BigRational(2 * l * (2 * l - 1));
    ratio.push_back(make_float(r, wp));
  }
  const PrecFloat A = richardson(ratio, order, l0);
  const PrecFloat A_prev = richardson(ratio, order - 1, l0);
  const BigRational A_rat(9, 4 * (table.n_power - 1));
  const PrecFloat A_exact = make_float(A_rat, wp);
  // Borel-consistency guard: the fitted rate must sit on the instanton
  // action prediction before it is used to normalize S
  const PrecFloat A_use = abs(A / A_exact - 1) < 1e-3 ? A_exact : A;
  const PrecFloat logA = log(A_use);

  // offset theta from (s_{l+1} - s_l) / (1/(2l) + 1/(2l+1))
  std::vector<PrecFloat> s;
  for (long l = l0 - 1; l <= l_max; ++l)
    s.push_back(log_abs(table.coeffs[static_cast<std::size_t>(l)], wp) -
                lgamma_wp(make_float(2 * l, wp), wp) - l * logA);
  std::vector<PrecFloat> theta_seq;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const long l = l0 - 1 + static_cast<long>(i);
    PrecFloat w = make_float(1L, wp) / (2 * l) + make_float(1L, wp) / (2 * l + 1);
    theta_seq.push_back((s[i + 1] - s[i]) / w);
  }
  const PrecFloat theta = richardson(theta_seq, order, l0 - 1);

  std::vector<PrecFloat> sigma;
  for (long l = l0; l <= l_max; ++l) {
    PrecFloat lg = lgamma_wp(make_float(2 * l, wp) + theta, wp);
    sigma.push_back(exp(log_abs(table.coeffs[static_cast<std::size_t>(l)], wp) -
                        l * logA - lg));
  }
  const PrecFloat S = richardson(sigma, order, l0);
  const PrecFloat S_prev = richardson(sigma, order - 1, l0);

  LargeOrderFit fit;
  fit.model = FitModel::TwoFactorial;
  fit.n_power = table.n_power;
  fit.rate_A = make_float(A, ctx.digits + 6);
  fit.constant_S = make_float(S, ctx.digits + 6);
  fit.offset = make_float(theta, ctx.digits + 6);
  fit.subleading_beta = make_float(0L, ctx.digits + 6);
  fit.richardson_order = order;
  PrecFloat res = abs(S - S_prev) / abs(S) + abs(A - A_prev) / abs(A);
  fit.residual = make_float(res, ctx.digits + 6);
  return fit;
}

PrecFloat borel_consistency(int n_power, const LargeOrderFit& fit) {
  if (n_power < 2)
    throw DomainError("borel_consistency: n_power >= 2");
  const int wp = std::max(40, static_cast<int>(fit.rate_A.precision()) + 8);
  const BigRational A_rat(9, 4 * (n_power - 1));
  if (fit.rate_A == make_float(A_rat, static_cast<int>(fit.rate_A.precision())))
    return make_float(0L, wp);  // algebraic identity, recognized exactly
  // (fall through to the numeric comparison)
  const PrecFloat lhs = sqrt(1 / make_float(fit.rate_A, wp));
  const PrecFloat rhs = 2 * sqrt(make_float(n_power - 1, wp)) / 3;
  return abs(lhs - rhs) / rhs;
}

}  // namespace genhm
