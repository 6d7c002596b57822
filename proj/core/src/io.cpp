#include <genhm/io.hpp>

#include <boost/multiprecision/gmp.hpp>

#include <cstdio>
#include <vector>

namespace genhm {

std::string format_float(const PrecFloat& v, int sig_digits) {
  if (sig_digits < 1)
    throw DomainError("format_float: sig_digits >= 1");
  char* s = nullptr;
  if (mpfr_asprintf(&s, "%.*Rg", sig_digits, v.backend().data()) < 0)
    throw Error("format_float: mpfr_asprintf failed");
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

void write_grid_csv(std::ostream& os, const GridFunction& g, int sig_digits) {
  os << "x,y\n";
  for (std::size_t i = 0; i < g.xs.size(); ++i)
    os << format_float(g.xs[i], sig_digits) << ','
       << format_float(g.ys[i], sig_digits) << '\n';
}

void write_coeff_csv(std::ostream& os, const CoeffTable& t) {
  os << "index,numerator,denominator\n";
  for (std::size_t i = 0; i < t.coeffs.size(); ++i)
    os << i << ',' << numerator(t.coeffs[i]).str() << ','
       << denominator(t.coeffs[i]).str() << '\n';
}

void write_pole_csv(std::ostream& os, const PoleSeries& s) {
  os << "j,coefficient\n";
  for (std::size_t i = 0; i < s.coeffs.size(); ++i)
    os << (s.j_min + static_cast<long>(i)) << ",\""
       << s.coeffs[i].to_string() << "\"\n";
}

}  // namespace genhm
