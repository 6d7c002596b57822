#pragma once

#include <genhm/coeffs.hpp>
#include <genhm/precision.hpp>

#include <span>

namespace genhm {

enum class FitModel {
  OneFactorial,  // d_m ~ S (-1)^m A^(m-1) Gamma(m+theta) [1 + beta/(m-1) + ...]
  TwoFactorial,  // c_l ~ -S A^l Gamma(2l + offset)
};

/// Extracted large-order growth parameters. `residual` is the relative
/// change of S between the last two Richardson orders; a fit is accepted
/// when residual < 1e-3 (see `ok`).
struct LargeOrderFit {
  FitModel model = FitModel::OneFactorial;
  int n_power = 0;
  PrecFloat rate_A;
  PrecFloat constant_S;
  PrecFloat offset;           // OneFactorial: gamma offset - 1 (so Gamma(m) is -1)
  PrecFloat subleading_beta;  // OneFactorial only
  int richardson_order = 6;
  PrecFloat residual;

  bool ok() const { return residual < 1e-3; }
};

/// Rejection signal for the identically-zero c_l tail at N = 2.
class ZeroTailError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Iterated polynomial Richardson transform for sequences with an
/// asymptotic expansion in 1/m; seq[i] is the value at m = m_first + i.
/// Exact (up to roundoff) on polynomials in 1/m of degree <= order.
PrecFloat richardson(std::span<const PrecFloat> seq, int order, long m_first = 1);

/// Fits d_m^(1) tables (sector PosInstanton1):
///   rate A from the accelerated ratio |d_m/d_{m-1}|/m,
///   gamma offset from the accelerated log-difference slope,
///   S from the accelerated normalized sequence,
///   beta from the accelerated (m-1)(normalized/S - 1).
/// Throws DomainError on non-alternating input or fewer than 80 terms.
LargeOrderFit fit_one_factorial(const CoeffTable& table, const PrecContext& ctx,
                                int richardson_order = 6);

/// Fits c_l tables (sector NegPerturbative) to -S A^l Gamma(2l + offset);
/// needs >= 40 terms and N >= 3 (ZeroTailError for the N=2 zero tail).
LargeOrderFit fit_two_factorial(const CoeffTable& table, const PrecContext& ctx,
                                int richardson_order = 6);

/// Large-order/low-order resurgence check: relative difference between
/// sqrt(1/rate_A) and the instanton action ratio (2/3) sqrt(N-1) / (2/3).
/// Exactly zero when rate_A is exactly 9/(4(N-1)).
PrecFloat borel_consistency(int n_power, const LargeOrderFit& fit);

}  // namespace genhm
