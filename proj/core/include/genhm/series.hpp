#pragma once

#include <genhm/precision.hpp>

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace genhm {

/// Dense truncated power series over BigRational; c[i] is the coefficient
/// of u^i.
using RationalSeries = std::vector<BigRational>;

/// Cauchy product truncated to len coefficients.
RationalSeries series_mul(const RationalSeries& a, const RationalSeries& b,
                          std::size_t len);

/// a(u)^n truncated to len, via the first-order recursion obtained from
/// a * (a^n)' = n * a' * a^n. Requires a[0] != 0.
RationalSeries series_pow(const RationalSeries& a, long n, std::size_t len);

/// a(u)^n by binary powering over Cauchy products. Slower; kept as an
/// independent route for the re-substitution checks.
RationalSeries series_pow_binary(const RationalSeries& a, long n,
                                 std::size_t len);

/// Finite Puiseux-type series sum_j c_j x^(j/2) with integer half-exponent
/// index j running over [lo, valid]. Entries beyond `valid` are unknown
/// (dropped by construction), and multiplication propagates that bound so
/// truncated algebra never manufactures wrong coefficients.
class HalfSeries {
public:
  HalfSeries() = default;
  /// series with a single term q * x^(j/2), trusted through half-order vb.
  static HalfSeries monomial(const BigRational& q, long j, long vb);
  /// identically zero, trusted through half-order vb.
  static HalfSeries zero(long vb);

  long lo() const { return lo_; }
  long valid() const { return valid_; }
  /// coefficient of x^(j/2); zero outside stored range (asserts j <= valid).
  const BigRational& at(long j) const;
  bool is_zero() const;

  HalfSeries& operator+=(const HalfSeries& o);
  HalfSeries& operator-=(const HalfSeries& o);
  friend HalfSeries operator+(HalfSeries a, const HalfSeries& b) { return a += b; }
  friend HalfSeries operator-(HalfSeries a, const HalfSeries& b) { return a -= b; }
  friend HalfSeries operator*(const HalfSeries& a, const HalfSeries& b);
  HalfSeries& operator*=(const BigRational& q);

  /// d/dx: x^(j/2) -> (j/2) x^(j/2 - 1).
  HalfSeries derivative() const;

  /// n-th power by binary powering.
  HalfSeries pow(long n) const;

private:
  void normalize();

  long lo_ = 0;
  long valid_ = -1;          // empty: valid_ < lo_
  std::vector<BigRational> c_;  // c_[i] is coefficient of x^((lo_+i)/2)
};

/// Polynomial in the two symbols (x0, h0) with rational coefficients.
class Poly2 {
public:
  Poly2() = default;
  Poly2(const BigRational& q) { if (q != 0) t_[{0, 0}] = q; }
  Poly2(long v) : Poly2(BigRational(v)) {}
  static Poly2 x0() { Poly2 p; p.t_[{1, 0}] = 1; return p; }
  static Poly2 h0() { Poly2 p; p.t_[{0, 1}] = 1; return p; }

  bool is_zero() const { return t_.empty(); }
  bool operator==(const Poly2& o) const { return t_ == o.t_; }

  Poly2& operator+=(const Poly2& o);
  Poly2& operator-=(const Poly2& o);
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  Poly2& operator*=(const BigRational& q);
  friend Poly2 operator*(Poly2 a, const BigRational& q) { return a *= q; }

  /// Numeric evaluation (used by figure/data paths).
  BigRational eval(const BigRational& x0v, const BigRational& h0v) const;

  /// Rendering like "-1/6*x0 + 1/72*x0^2 + h0".
  std::string to_string() const;

private:
  // (x0 exponent, h0 exponent) -> coefficient; zero coefficients erased.
  std::map<std::pair<int, int>, BigRational> t_;
};

}  // namespace genhm
