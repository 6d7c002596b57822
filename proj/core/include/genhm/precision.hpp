#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>

namespace genhm {

namespace mp = boost::multiprecision;

/// Exact rational scalar; carrier for every coefficient recursion.
using BigRational = mp::number<mp::gmp_rational, mp::et_off>;
using BigInt = mp::number<mp::gmp_int, mp::et_off>;

/// Floating-point scalar with per-value precision (MPFR-backed).
///
/// Binary operations propagate the widest operand precision, so seeding the
/// inputs of a computation at the working precision is enough; nothing in
/// this library mutates the thread-global default precision.
using PrecFloat = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument violates a precondition (bad N, bad tolerance, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Requested digits cannot be met at this argument with the configured
/// series depth.
class PrecisionUnreachable : public Error {
public:
  using Error::Error;
};

class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// Decimal working-precision context threaded through all floating-point
/// computations. Results hold at least digits-2 significant decimal digits
/// within each operation's stated domain.
struct PrecContext {
  int digits = 32;

  void validate() const {
    if (digits < 15)
      throw DomainError("PrecContext: digits must be >= 15, got " +
                        std::to_string(digits));
  }
};

/// Makes a PrecFloat carrying exactly `digits10` decimal digits.
inline PrecFloat make_float(int digits10) {
  PrecFloat r;
  r.precision(static_cast<unsigned>(digits10));
  return r;
}

inline PrecFloat make_float(long v, int digits10) {
  PrecFloat r = make_float(digits10);
  mpfr_set_si(r.backend().data(), v, MPFR_RNDN);
  return r;
}

inline PrecFloat make_float(int v, int digits10) {
  return make_float(static_cast<long>(v), digits10);
}

inline PrecFloat make_float(double v, int digits10) {
  PrecFloat r = make_float(digits10);
  mpfr_set_d(r.backend().data(), v, MPFR_RNDN);
  return r;
}

inline PrecFloat make_float(const PrecFloat& v, int digits10) {
  PrecFloat r = make_float(digits10);
  mpfr_set(r.backend().data(), v.backend().data(), MPFR_RNDN);
  return r;
}

inline PrecFloat make_float(const BigRational& q, int digits10) {
  PrecFloat r = make_float(digits10);
  mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
  return r;
}

/// Parses a decimal literal at the given precision.
inline PrecFloat make_float(const char* s, int digits10) {
  PrecFloat r = make_float(digits10);
  if (mpfr_set_str(r.backend().data(), s, 10, MPFR_RNDN) != 0)
    throw DomainError(std::string("make_float: cannot parse '") + s + "'");
  return r;
}

inline PrecFloat const_pi(int digits10) {
  PrecFloat r = make_float(digits10);
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

/// 10^-e at the working precision of convenience comparisons.
inline PrecFloat pow10(long e, int digits10) {
  PrecFloat r = make_float(digits10);
  mpfr_ui_pow_ui(r.backend().data(), 10u, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
  if (e < 0)
    r = 1 / r;
  return r;
}

inline BigRational rat(long num, long den = 1) { return BigRational(num, den); }

/// Exact integer power of a rational.
inline BigRational rat_pow(const BigRational& q, long e) {
  if (e == 0)
    return BigRational(1);
  BigRational base = e > 0 ? q : BigRational(1) / q;
  long n = e > 0 ? e : -e;
  BigRational acc(1);
  while (n > 0) {
    if (n & 1)
      acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

inline BigInt factorial(long n) {
  BigInt r(1);
  for (long i = 2; i <= n; ++i)
    r *= i;
  return r;
}

}  // namespace genhm
