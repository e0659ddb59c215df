#pragma once

// RatFunc: the field Q(s) of rational functions in one formal variable s,
// with q = s^2. Elements are reduced fractions of integer-coefficient
// polynomials; canonical form has coprime contents, no common polynomial
// factor, and a denominator with positive leading coefficient.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace qdha {

using ZPoly = std::vector<Int>;  // coefficient of s^i at index i, no trailing zeros

namespace zp {

inline void trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline long deg(const ZPoly& p) { return static_cast<long>(p.size()) - 1; }
inline bool is_zero(const ZPoly& p) { return p.empty(); }

inline ZPoly from_int(const Int& c) {
  if (c == 0) return {};
  return {c};
}

inline ZPoly add(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

inline ZPoly neg(ZPoly a) {
  for (auto& c : a) c = -c;
  return a;
}

inline ZPoly sub(const ZPoly& a, const ZPoly& b) { return add(a, neg(b)); }

inline ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

inline ZPoly mul_int(ZPoly a, const Int& c) {
  if (c == 0) return {};
  for (auto& x : a) x *= c;
  return a;
}

inline ZPoly shift(const ZPoly& a, long k) {  // multiply by s^k, k >= 0
  if (a.empty()) return {};
  ZPoly r(a.size() + static_cast<size_t>(k), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i + static_cast<size_t>(k)] = a[i];
  return r;
}

inline Int content(const ZPoly& a) {
  Int g = 0;
  for (const auto& c : a) g = boost::multiprecision::gcd(g, c);
  return g;  // 0 for the zero polynomial
}

inline ZPoly div_int(ZPoly a, const Int& c) {  // exact
  for (auto& x : a) x /= c;
  return a;
}

// Exact division, assumes b | a in Z[s].
inline ZPoly div_exact(ZPoly a, const ZPoly& b) {
  if (is_zero(a) || a.size() < b.size()) return {};
  ZPoly quot(a.size() - b.size() + 1, Int(0));
  while (!is_zero(a) && deg(a) >= deg(b)) {
    long d = deg(a) - deg(b);
    Int c = a.back() / b.back();
    quot[static_cast<size_t>(d)] = c;
    ZPoly t = shift(mul_int(b, c), d);
    a = sub(a, t);
  }
  return quot;
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
inline ZPoly prem(ZPoly a, const ZPoly& b) {
  long delta = deg(a) - deg(b);
  if (delta < 0) return a;
  const Int lb = b.back();
  long steps = delta + 1;
  while (!is_zero(a) && deg(a) >= deg(b)) {
    Int la = a.back();
    long d = deg(a) - deg(b);
    a = sub(mul_int(a, lb), shift(mul_int(b, la), d));
    --steps;
  }
  if (steps > 0) a = mul_int(a, boost::multiprecision::pow(lb, static_cast<unsigned>(steps)));
  return a;
}

inline ZPoly primitive(ZPoly a) {
  Int c = content(a);
  if (c == 0) return {};
  if (a.back() < 0) c = -c;
  return div_int(std::move(a), c);
}

// Primitive-PRS gcd; result is primitive with positive leading coefficient.
inline ZPoly gcd(ZPoly a, ZPoly b) {
  a = primitive(std::move(a));
  b = primitive(std::move(b));
  if (is_zero(a)) return b;
  if (is_zero(b)) return a;
  if (deg(a) == 0 || deg(b) == 0) return {Int(1)};
  if (deg(a) < deg(b)) std::swap(a, b);
  while (!is_zero(b)) {
    if (deg(b) == 0) return {Int(1)};
    ZPoly r = primitive(prem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline std::string str(const ZPoly& p, const std::string& var = "s") {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = deg(p); i >= 0; --i) {
    const Int& c = p[static_cast<size_t>(i)];
    if (c == 0) continue;
    Int a = boost::multiprecision::abs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (i == 0) {
      os << a;
    } else {
      if (a != 1) os << a << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace zp

class RatFunc {
public:
  RatFunc() : num_(), den_{Int(1)} {}
  RatFunc(long n) : num_(zp::from_int(Int(n))), den_{Int(1)} {}
  RatFunc(int n) : num_(zp::from_int(Int(n))), den_{Int(1)} {}
  explicit RatFunc(const Rational& r)
      : num_(zp::from_int(boost::multiprecision::numerator(r))),
        den_(zp::from_int(boost::multiprecision::denominator(r))) {}
  RatFunc(ZPoly num, ZPoly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

  static RatFunc s(long k = 1) {  // s^k, k may be negative
    RatFunc r;
    if (k >= 0)
      r.num_ = zp::shift({Int(1)}, k);
    else {
      r.num_ = {Int(1)};
      r.den_ = zp::shift({Int(1)}, -k);
    }
    return r;
  }
  static RatFunc q(long k = 1) { return s(2 * k); }

  const ZPoly& num() const { return num_; }
  const ZPoly& den() const { return den_; }
  bool is_zero() const { return num_.empty(); }
  bool is_one() const { return num_.size() == 1 && num_[0] == 1 && den_.size() == 1 && den_[0] == 1; }

  friend RatFunc operator+(const RatFunc& x, const RatFunc& y) {
    return RatFunc(zp::add(zp::mul(x.num_, y.den_), zp::mul(y.num_, x.den_)),
                   zp::mul(x.den_, y.den_));
  }
  friend RatFunc operator-(const RatFunc& x, const RatFunc& y) {
    return RatFunc(zp::sub(zp::mul(x.num_, y.den_), zp::mul(y.num_, x.den_)),
                   zp::mul(x.den_, y.den_));
  }
  RatFunc operator-() const {
    RatFunc r(*this);
    r.num_ = zp::neg(r.num_);
    return r;
  }
  friend RatFunc operator*(const RatFunc& x, const RatFunc& y) {
    // cross-cancel first to keep intermediate degrees down
    ZPoly g1 = zp::gcd(x.num_, y.den_);
    ZPoly g2 = zp::gcd(y.num_, x.den_);
    ZPoly n = zp::mul(x.num_.empty() ? ZPoly{} : zp::div_exact(x.num_, g1),
                      y.num_.empty() ? ZPoly{} : zp::div_exact(y.num_, g2));
    ZPoly d = zp::mul(zp::div_exact(x.den_, g2), zp::div_exact(y.den_, g1));
    return RatFunc(std::move(n), std::move(d));
  }
  friend RatFunc operator/(const RatFunc& x, const RatFunc& y) {
    if (y.is_zero()) fail(errc::validation, "RatFunc: division by zero");
    RatFunc inv;
    inv.num_ = y.den_;
    inv.den_ = y.num_;
    return x * inv;
  }
  RatFunc& operator+=(const RatFunc& y) { return *this = *this + y; }
  RatFunc& operator-=(const RatFunc& y) { return *this = *this - y; }
  RatFunc& operator*=(const RatFunc& y) { return *this = *this * y; }
  RatFunc& operator/=(const RatFunc& y) { return *this = *this / y; }

  friend bool operator==(const RatFunc& x, const RatFunc& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend bool operator!=(const RatFunc& x, const RatFunc& y) { return !(x == y); }

  double eval(double s_val) const {
    double n = 0, d = 0, p = 1;
    for (size_t i = 0; i < num_.size(); ++i, p *= s_val) n += num_[i].convert_to<double>() * p;
    p = 1;
    for (size_t i = 0; i < den_.size(); ++i, p *= s_val) d += den_[i].convert_to<double>() * p;
    return n / d;
  }

  // Exact substitution s -> v for a field scalar S (e.g. Rational or QExt).
  template <class S>
  S eval_exact(const S& v) const {
    S n(0), d(0), p(1);
    for (size_t i = 0; i < num_.size(); ++i, p = p * v) n = n + S(Rational(num_[i])) * p;
    p = S(1);
    for (size_t i = 0; i < den_.size(); ++i, p = p * v) d = d + S(Rational(den_[i])) * p;
    return n / d;
  }

  std::string str(const std::string& var = "s") const {
    if (is_zero()) return "0";
    std::string n = zp::str(num_, var);
    if (den_.size() == 1 && den_[0] == 1) return n;
    std::string d = zp::str(den_, var);
    return "(" + n + ")/(" + d + ")";
  }

private:
  void reduce() {
    if (zp::is_zero(den_)) fail(errc::validation, "RatFunc: zero denominator");
    if (zp::is_zero(num_)) {
      den_ = {Int(1)};
      return;
    }
    ZPoly g = zp::gcd(num_, den_);
    if (zp::deg(g) > 0 || (g.size() == 1 && g[0] != 1)) {
      num_ = zp::div_exact(num_, g);
      den_ = zp::div_exact(den_, g);
    }
    Int cn = zp::content(num_), cd = zp::content(den_);
    Int c = boost::multiprecision::gcd(cn, cd);
    if (c > 1) {
      num_ = zp::div_int(std::move(num_), c);
      den_ = zp::div_int(std::move(den_), c);
    }
    if (den_.back() < 0) {
      num_ = zp::neg(std::move(num_));
      den_ = zp::neg(std::move(den_));
    }
  }

  ZPoly num_, den_;
};

template <>
struct scalar_traits<RatFunc> {
  static constexpr bool is_exact = true;
  static constexpr bool is_complex = false;
};

template <>
struct scalar_maker<RatFunc> {
  static RatFunc from_ratio(const RatFunc&, long num, long den) {
    return RatFunc(Rational(num, den));
  }
};

template <>
struct half_power<RatFunc> {
  static RatFunc pow(const RatFunc&, long k) { return RatFunc::s(k); }
};

inline double s_abs(const RatFunc& x) { return std::abs(x.eval(0.5)); }
inline double s_real(const RatFunc& x) { return x.eval(0.5); }
inline bool s_is_zero(const RatFunc& x) { return x.is_zero(); }

// Context with formal q = s^2.
inline QContext<RatFunc> make_formal_context(long max_terms = 10000) {
  return QContext<RatFunc>(RatFunc::q(), 1e-12, max_terms);
}

}  // namespace qdha
