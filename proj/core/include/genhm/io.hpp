#pragma once

#include <genhm/coeffs.hpp>
#include <genhm/inteq.hpp>

#include <ostream>
#include <string>

namespace genhm {

/// Shortest-round deterministic decimal rendering with sig_digits
/// significant digits (mpfr "%Rg").
std::string format_float(const PrecFloat& v, int sig_digits);

/// Two-column CSV (x, y) with a header row.
void write_grid_csv(std::ostream& os, const GridFunction& g, int sig_digits);

/// Exact CSV (index, numerator, denominator).
void write_coeff_csv(std::ostream& os, const CoeffTable& t);

/// Symbolic CSV (j, coefficient) with polynomials in x0, h0.
void write_pole_csv(std::ostream& os, const PoleSeries& s);

}  // namespace genhm
