#pragma once

#include <genhm/coeffs.hpp>
#include <genhm/series.hpp>

#include <optional>

namespace genhm {

// Re-substitution oracles: each one plugs a truncated series back into
// y'' = 2y^N + xy from scratch (independent of the recursions that
// generated it) and reports the lowest order with a nonzero residual
// coefficient, or nullopt when the residual vanishes identically through
// the trusted truncation order. All arithmetic is exact.

/// Airy sector: residual of (E F0)'' - x E F0 with F0 from the table,
/// E = exp(-(2/3)x^(3/2)) / (2 sqrt(pi) x^(1/4)). Orders are reported in
/// half-powers of x (exponent j means x^(j/2)).
std::optional<long> airy_base_residual(const CoeffTable& base);

/// One-instanton sector: residual of
///   (E^N F1)'' - x E^N F1 - 2 E^N F0^N
/// with F1 from `d1`, F0 regenerated internally.
std::optional<long> pos_instanton_residual(const CoeffTable& d1);

/// Negative side: residual of y'' - 2y^N - xy for
/// y = (-x/2)^(1/(N-1)) sum c_l u^(-3l), u = -x. Orders are reported as the
/// index l of the failing matching equation.
std::optional<long> neg_perturbative_residual(const CoeffTable& c);

/// Pole series: residual of y'' - 2y^3 - xy around x = x0 as symbolic
/// polynomials; reports the lowest power of (x - x0) with nonzero residual.
std::optional<long> pole_residual(const PoleSeries& series);

}  // namespace genhm
