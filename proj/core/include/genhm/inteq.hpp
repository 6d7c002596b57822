#pragma once

#include <genhm/precision.hpp>
#include <genhm/quadrature.hpp>

#include <functional>
#include <span>
#include <vector>

namespace genhm {

enum class DomainTag { PositiveSide, NegativeSide };

/// Sampled function on a strictly increasing abscissa list.
struct GridFunction {
  std::vector<PrecFloat> xs;
  std::vector<PrecFloat> ys;
  DomainTag domain_tag = DomainTag::PositiveSide;
};

struct QuadratureSpec {
  PrecFloat rel_tol{1e-10};
  PrecFloat truncation_threshold{1e-18};
  PrecContext ctx;

  void validate() const;
};

/// Picard iteration left the contraction regime.
class PicardDivergence : public Error {
public:
  using Error::Error;
};

/// Fluctuation series truncated beyond the optimal order.
class TruncationError : public DomainError {
public:
  using DomainError::DomainError;
};

/// K[f](x) = 2 pi [ Ai(x) int_x^inf f Bi - Bi(x) int_x^inf f Ai ], the
/// inverse of the Airy linearization. The upper limit is truncated where
/// the integrand falls below truncation_threshold times its running peak;
/// DecayError if that never happens by z = x + 40. Both integrals share
/// panels and nodes.
PrecFloat airy_kernel_integral(
    const std::function<PrecFloat(const PrecFloat&)>& f, const PrecFloat& x,
    const QuadratureSpec& spec);

/// Iterates y <- k Ai + K[y^N] from y_0 = k Ai and samples the final
/// iterate on xs (a grid inside [0, x_plus]). Throws PicardDivergence when
/// the iterate norm grows three iterations in a row.
GridFunction picard_solve(int n_power, const PrecFloat& k,
                          std::span<const PrecFloat> xs, int iterations,
                          const QuadratureSpec& spec);

/// Linear tower of the k-expansion: level 1 -> Y_[1] = Ai,
/// level 2 -> Y_[N] = K[Ai^N], level 3 -> Y_[2N-1] = N K[Y_[N] Ai^(N-1)].
GridFunction y_tower(int n_power, int level, std::span<const PrecFloat> xs,
                     const QuadratureSpec& spec);

/// Negative-side tower for N = 2 via the w = y + x/2 transform:
/// W_[n](x) = Y_[n](-x) on a grid in [x_minus, 0].
GridFunction w_tower_n2(int level, std::span<const PrecFloat> xs,
                        const QuadratureSpec& spec);

struct N2MatchResult {
  GridFunction transseries;  // -x/2 + sum_n k2^n W_[n](x)
  PrecFloat max_deviation;   // max-norm against the shooting solution
};

/// Evaluates the N=2 negative-side trans-series truncated at `levels`
/// (0..3) with parameter k2 and reports its max-norm deviation from the
/// numerically integrated separatrix solution on the same grid.
N2MatchResult n2_match(const PrecFloat& k2, std::span<const PrecFloat> xs_neg,
                       int levels, const QuadratureSpec& spec);

/// Partial sum of the positive-side trans-series: n_max = 0 keeps
/// k * (Airy asymptotics truncated at m_max); n_max = 1 adds the
/// one-instanton sector (k E)^N (1/x) sum_m d_m^(1) x^(-3m/2).
/// Requires x >= 3 and m_max at most the optimal order ~ (4/3) x^(3/2).
PrecFloat eval_pos_transseries(int n_power, const PrecFloat& k,
                               const PrecFloat& x, int n_max, int m_max,
                               const PrecContext& ctx);

}  // namespace genhm
