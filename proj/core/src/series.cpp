#include <genhm/series.hpp>

#include <algorithm>
#include <cassert>
#include <sstream>

namespace genhm {

RationalSeries series_mul(const RationalSeries& a, const RationalSeries& b,
                          std::size_t len) {
  RationalSeries r(len, BigRational(0));
  const std::size_t na = std::min(a.size(), len);
  for (std::size_t i = 0; i < na; ++i) {
    if (a[i] == 0)
      continue;
    const std::size_t nb = std::min(b.size(), len - i);
    for (std::size_t j = 0; j < nb; ++j) {
      if (b[j] != 0)
        r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

RationalSeries series_pow(const RationalSeries& a, long n, std::size_t len) {
  if (len == 0)
    return {};
  if (a.empty() || a[0] == 0)
    throw DomainError("series_pow: requires a[0] != 0");
  if (n < 0)
    throw DomainError("series_pow: requires n >= 0");
  RationalSeries p(len, BigRational(0));
  p[0] = rat_pow(a[0], n);
  // l p_l a_0 = sum_{i=1..l} (i(n+1) - l) a_i p_{l-i}
  for (std::size_t l = 1; l < len; ++l) {
    BigRational acc(0);
    const std::size_t imax = std::min(l, a.size() - 1);
    for (std::size_t i = 1; i <= imax; ++i) {
      if (a[i] == 0)
        continue;
      const long w = static_cast<long>(i) * (n + 1) - static_cast<long>(l);
      if (w != 0)
        acc += w * a[i] * p[l - i];
    }
    p[l] = acc / (static_cast<long>(l) * a[0]);
  }
  return p;
}

RationalSeries series_pow_binary(const RationalSeries& a, long n,
                                 std::size_t len) {
  if (n < 0)
    throw DomainError("series_pow_binary: requires n >= 0");
  RationalSeries acc(len, BigRational(0));
  if (len > 0)
    acc[0] = 1;
  RationalSeries base = a;
  base.resize(len, BigRational(0));
  while (n > 0) {
    if (n & 1)
      acc = series_mul(acc, base, len);
    n >>= 1;
    if (n > 0)
      base = series_mul(base, base, len);
  }
  return acc;
}

HalfSeries HalfSeries::monomial(const BigRational& q, long j, long vb) {
  HalfSeries s;
  s.lo_ = j;
  s.valid_ = vb;
  if (vb >= j) {
    s.c_.assign(static_cast<std::size_t>(vb - j + 1), BigRational(0));
    s.c_[0] = q;
  }
  s.normalize();
  return s;
}

HalfSeries HalfSeries::zero(long vb) {
  HalfSeries s;
  s.lo_ = vb + 1;
  s.valid_ = vb;
  return s;
}

const BigRational& HalfSeries::at(long j) const {
  static const BigRational kZero(0);
  assert(j <= valid_ && "coefficient beyond the trusted order");
  if (j < lo_ || j > valid_)
    return kZero;
  return c_[static_cast<std::size_t>(j - lo_)];
}

bool HalfSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(),
                     [](const BigRational& q) { return q == 0; });
}

void HalfSeries::normalize() {
  // drop leading zeros so lo_ stays tight for valid-bound propagation
  std::size_t k = 0;
  while (k < c_.size() && c_[k] == 0)
    ++k;
  if (k > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(k));
    lo_ += static_cast<long>(k);
  }
  if (c_.empty())
    lo_ = valid_ + 1;
}

HalfSeries& HalfSeries::operator+=(const HalfSeries& o) {
  const long vb = std::min(valid_, o.valid_);
  const long lo = std::min(lo_, o.lo_);
  std::vector<BigRational> out;
  if (vb >= lo)
    out.assign(static_cast<std::size_t>(vb - lo + 1), BigRational(0));
  for (long j = lo; j <= vb; ++j) {
    BigRational v(0);
    if (j >= lo_ && j - lo_ < static_cast<long>(c_.size()))
      v += c_[static_cast<std::size_t>(j - lo_)];
    if (j >= o.lo_ && j - o.lo_ < static_cast<long>(o.c_.size()))
      v += o.c_[static_cast<std::size_t>(j - o.lo_)];
    out[static_cast<std::size_t>(j - lo)] = std::move(v);
  }
  lo_ = lo;
  valid_ = vb;
  c_ = std::move(out);
  normalize();
  return *this;
}

HalfSeries& HalfSeries::operator-=(const HalfSeries& o) {
  HalfSeries neg = o;
  for (auto& q : neg.c_)
    q = -q;
  return *this += neg;
}

HalfSeries operator*(const HalfSeries& a, const HalfSeries& b) {
  // order j of the product needs every split j = ja + jb with both factors
  // known, so the result is trusted through the min of the cross bounds
  HalfSeries r;
  r.valid_ = std::min(a.valid_ + b.lo_, b.valid_ + a.lo_);
  if (a.c_.empty() || b.c_.empty())
    return HalfSeries::zero(r.valid_);
  r.lo_ = a.lo_ + b.lo_;
  if (r.valid_ >= r.lo_)
    r.c_.assign(static_cast<std::size_t>(r.valid_ - r.lo_ + 1), BigRational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0)
      continue;
    const long ja = a.lo_ + static_cast<long>(i);
    for (std::size_t k = 0; k < b.c_.size(); ++k) {
      const long j = ja + b.lo_ + static_cast<long>(k);
      if (j > r.valid_)
        break;
      if (b.c_[k] != 0)
        r.c_[static_cast<std::size_t>(j - r.lo_)] += a.c_[i] * b.c_[k];
    }
  }
  r.normalize();
  return r;
}

HalfSeries& HalfSeries::operator*=(const BigRational& q) {
  if (q == 0) {
    c_.clear();
    lo_ = valid_ + 1;
    return *this;
  }
  for (auto& v : c_)
    v *= q;
  return *this;
}

HalfSeries HalfSeries::derivative() const {
  HalfSeries r;
  r.lo_ = lo_ - 2;
  r.valid_ = valid_ - 2;
  r.c_ = c_;
  for (std::size_t i = 0; i < r.c_.size(); ++i)
    r.c_[i] *= BigRational(lo_ + static_cast<long>(i), 2);
  r.normalize();
  return r;
}

HalfSeries HalfSeries::pow(long n) const {
  if (n < 0)
    throw DomainError("HalfSeries::pow: n >= 0");
  if (n == 0)
    return HalfSeries::monomial(1, 0, valid_ - lo_);
  HalfSeries acc = *this;
  for (long m = 1; m < n; ++m)
    acc = acc * (*this);
  return acc;
}

Poly2& Poly2::operator+=(const Poly2& o) {
  for (const auto& [k, v] : o.t_) {
    auto it = t_.find(k);
    if (it == t_.end()) {
      t_.emplace(k, v);
    } else {
      it->second += v;
      if (it->second == 0)
        t_.erase(it);
    }
  }
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
  for (const auto& [k, v] : o.t_) {
    auto it = t_.find(k);
    if (it == t_.end()) {
      t_.emplace(k, -v);
    } else {
      it->second -= v;
      if (it->second == 0)
        t_.erase(it);
    }
  }
  return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 r;
  for (const auto& [ka, va] : a.t_)
    for (const auto& [kb, vb] : b.t_) {
      const std::pair<int, int> k{ka.first + kb.first, ka.second + kb.second};
      auto it = r.t_.find(k);
      if (it == r.t_.end()) {
        r.t_.emplace(k, va * vb);
      } else {
        it->second += va * vb;
        if (it->second == 0)
          r.t_.erase(it);
      }
    }
  return r;
}

Poly2& Poly2::operator*=(const BigRational& q) {
  if (q == 0) {
    t_.clear();
    return *this;
  }
  for (auto& [k, v] : t_)
    v *= q;
  return *this;
}

BigRational Poly2::eval(const BigRational& x0v, const BigRational& h0v) const {
  BigRational r(0);
  for (const auto& [k, v] : t_)
    r += v * rat_pow(x0v, k.first) * rat_pow(h0v, k.second);
  return r;
}

std::string Poly2::to_string() const {
  if (t_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : t_) {
    BigRational av = v < 0 ? BigRational(-v) : v;
    if (!first)
      os << (v < 0 ? " - " : " + ");
    else if (v < 0)
      os << "-";
    first = false;
    const bool has_sym = k.first > 0 || k.second > 0;
    if (!has_sym || av != 1)
      os << av.str() << (has_sym ? "*" : "");
    if (k.first > 0) {
      os << "x0";
      if (k.first > 1)
        os << "^" << k.first;
      if (k.second > 0)
        os << "*";
    }
    if (k.second > 0) {
      os << "h0";
      if (k.second > 1)
        os << "^" << k.second;
    }
  }
  return os.str();
}

}  // namespace genhm
