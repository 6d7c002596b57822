#pragma once

#include <genhm/precision.hpp>
#include <genhm/series.hpp>

#include <vector>

namespace genhm {

enum class Sector {
  AiryBase,         // a_m of the Airy asymptotic expansion, powers x^(-3m/2)
  AiryPowerB,       // b_m of 2*(sum a)^N
  PosInstanton1,    // d_m^(1), one-instanton fluctuations, x -> +inf
  NegPerturbative,  // c_l, perturbative series in (-x)^(-3), x -> -inf
  PoleLaurent,
};

/// Exact coefficients of one trans-series sector.
struct CoeffTable {
  int n_power = 0;  // 0 for the N-independent AiryBase
  Sector sector = Sector::AiryBase;
  std::vector<BigRational> coeffs;
};

/// Movable-pole Laurent series sum_{j>=-1} a_j (x-x0)^j with a_j exact
/// polynomials in the symbols (x0, h0); only N=3 admits one.
struct PoleSeries {
  int k_max = 0;
  int j_min = -1;
  std::vector<Poly2> coeffs;  // coeffs[i] is a_{j_min+i}

  const Poly2& at(int j) const { return coeffs.at(static_cast<std::size_t>(j - j_min)); }
};

/// Instanton actions and the negative-side factorial growth rate, exact.
/// action_pos = 2/3 (coefficient of x^(3/2)); action_neg = (2/3) sqrt(N-1),
/// stored as the coefficient together with the square-root argument.
struct InstantonData {
  int n_power = 0;
  BigRational action_pos{2, 3};
  BigRational action_neg_coeff{2, 3};
  long action_neg_sqrt_arg = 0;       // N - 1
  BigRational growth_rate_neg{0};     // 9 / (4(N-1)) exactly

  PrecFloat action_neg(const PrecContext& ctx) const {
    const int wp = ctx.digits + 6;
    return make_float(action_neg_coeff, wp) *
           sqrt(make_float(action_neg_sqrt_arg, wp));
  }
};

/// a_m = (-1)^m Gamma(m+1/6) Gamma(m+5/6) / (2 pi (4/3)^m m!), generated as
/// exact rationals through the reflection identity Gamma(1/6)Gamma(5/6)=2pi.
CoeffTable airy_asym_coeffs(int m_max);

/// b_m of Eq.-style 2*(airy series)^N; requires n_power >= 2.
CoeffTable airy_power_coeffs(int n_power, int m_max);

/// One-instanton fluctuation coefficients d_m^(1), from the recursion
/// obtained by substituting the trans-series ansatz into y'' = 2y^N + xy:
///   (N^2-1) d_m + (N/2)(N+6m-3) d_{m-1}
///               + (1/16)(N+6m-8)(N+6m-4) d_{m-2} = b_m,
/// with d_{-1} = d_{-2} = 0. Every generated table is validated against the
/// independent re-substitution oracle before being returned.
CoeffTable d1_coeffs(int n_power, int m_max);

/// Perturbative coefficients c_l of the x -> -inf expansion
/// y = (-x/2)^(1/(N-1)) sum_l c_l (-x)^(-3l), c_0 = 1, generated by direct
/// substitution order by order (c_1 = -(N-2)/(N-1)^3; identically zero tail
/// for N = 2).
CoeffTable c_coeffs(int n_power, int l_max);

/// N=3 movable-pole Laurent expansion; requires k_max >= 4. The order-3
/// resonance is verified to be compatible (0 = 0) and a_3 is the free
/// symbol h0.
PoleSeries pole_laurent_n3(int k_max);

/// True when a pure integer-power Laurent pole ansatz is obstructed for
/// this N: the leading exponent -2/(N-1) must be a negative integer and the
/// resonance compatibility condition must hold identically. N=3 -> false.
bool pole_obstruction(int n_power);

InstantonData instanton_data(int n_power);

}  // namespace genhm
