#pragma once

#include <genhm/precision.hpp>

namespace genhm {

/// All four Airy values at one abscissa. Satisfies the Wronskian identity
/// ai*bi_prime - ai_prime*bi = 1/pi to 10^(2-digits) relative error.
struct AiryValues {
  PrecFloat ai;
  PrecFloat ai_prime;
  PrecFloat bi;
  PrecFloat bi_prime;
};

/// Evaluates Ai, Ai', Bi, Bi' at x with at least ctx.digits-2 correct
/// significant digits. Requires |x| <= 1e4. Switches between the convergent
/// Maclaurin representation (with cancellation guard digits) and the
/// exponentially-accurate asymptotic expansions once the latter can deliver
/// the requested accuracy.
AiryValues airy_eval(const PrecFloat& x, const PrecContext& ctx);
AiryValues airy_eval(double x, const PrecContext& ctx);

/// Largest (least negative) root of Ai', x0 = -1.018792971647471...
/// Memoized per digits value.
PrecFloat airy_prime_first_zero(const PrecContext& ctx);

/// Gamma function for real z, z not a nonpositive integer.
PrecFloat gamma_eval(const PrecFloat& z, const PrecContext& ctx);
PrecFloat gamma_eval(double z, const PrecContext& ctx);

/// log Gamma for z > 0.
PrecFloat lgamma_eval(const PrecFloat& z, const PrecContext& ctx);

namespace detail {
// Branch entry points, exposed so tests can exercise the overlap band.
AiryValues airy_series(const PrecFloat& x, const PrecContext& ctx);
AiryValues airy_asymptotic(const PrecFloat& x, const PrecContext& ctx);
// Smallest |x| at which the asymptotic branch reaches the context accuracy.
double airy_asymptotic_threshold(const PrecContext& ctx);
}  // namespace detail

}  // namespace genhm
