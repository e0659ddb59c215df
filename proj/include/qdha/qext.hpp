#pragma once

// QExt: the quadratic extension Q(sqrt(q)) for a fixed rational q in (0,1).
// Values are a + b*s with s = sqrt(q). Division uses the conjugate; this is
// only a field when q is not a perfect rational square, so construction of a
// context collapses square q down to plain rational arithmetic (b stays 0).

#include <iosfwd>
#include <sstream>

#include "scalar.hpp"

namespace qdha {

class QExt {
public:
  QExt() : a_(0), b_(0), q_(0) {}
  explicit QExt(Rational a) : a_(std::move(a)), b_(0), q_(0) {}
  QExt(long n) : a_(n), b_(0), q_(0) {}
  QExt(int n) : a_(n), b_(0), q_(0) {}
  QExt(Rational a, Rational b, Rational q)
      : a_(std::move(a)), b_(std::move(b)), q_(std::move(q)) {
    fold();
  }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& base() const { return q_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  friend QExt operator+(const QExt& x, const QExt& y) {
    return QExt(x.a_ + y.a_, x.b_ + y.b_, x.pick_base(y));
  }
  friend QExt operator-(const QExt& x, const QExt& y) {
    return QExt(x.a_ - y.a_, x.b_ - y.b_, x.pick_base(y));
  }
  QExt operator-() const { return QExt(-a_, -b_, q_); }
  friend QExt operator*(const QExt& x, const QExt& y) {
    Rational q = x.pick_base(y);
    return QExt(x.a_ * y.a_ + x.b_ * y.b_ * q, x.a_ * y.b_ + x.b_ * y.a_, q);
  }
  friend QExt operator/(const QExt& x, const QExt& y) {
    if (y.is_zero()) fail(errc::validation, "QExt: division by zero");
    Rational q = x.pick_base(y);
    // (a - b s)(a + b s) = a^2 - b^2 q, nonzero since sqrt(q) is irrational
    Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * q;
    QExt num = x * QExt(y.a_, -y.b_, q);
    return QExt(num.a_ / norm, num.b_ / norm, q);
  }
  QExt& operator+=(const QExt& y) { return *this = *this + y; }
  QExt& operator-=(const QExt& y) { return *this = *this - y; }
  QExt& operator*=(const QExt& y) { return *this = *this * y; }
  QExt& operator/=(const QExt& y) { return *this = *this / y; }

  friend bool operator==(const QExt& x, const QExt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QExt& x, const QExt& y) { return !(x == y); }

  double to_d() const {
    return to_double(a_) + to_double(b_) * std::sqrt(to_double(q_));
  }

  std::string str() const {
    std::ostringstream os;
    if (b_ == 0) {
      os << a_;
    } else {
      os << a_ << (b_ >= 0 ? "+" : "-") << boost::multiprecision::abs(b_) << "*s";
    }
    return os.str();
  }

private:
  // A perfect-square base makes s rational; fold it into the rational part so
  // the conjugate norm can never vanish on nonzero values.
  void fold() {
    if (b_ == 0) return;
    if (auto r = exact_sqrt(q_)) {
      a_ += b_ * *r;
      b_ = 0;
    }
  }
  // Values made by QExt(long) carry no base; inherit it from the other operand.
  Rational pick_base(const QExt& other) const { return q_ != 0 ? q_ : other.q_; }

  Rational a_, b_, q_;
};

template <>
struct scalar_traits<QExt> {
  static constexpr bool is_exact = true;
  static constexpr bool is_complex = false;
};

template <>
struct scalar_maker<QExt> {
  static QExt from_ratio(const QExt& q, long num, long den) {
    return QExt(Rational(num, den), Rational(0), q.base());
  }
};

template <>
struct half_power<QExt> {
  static QExt pow(const QExt& q, long k) {
    if (!q.is_rational()) fail(errc::validation, "QExt context expects a rational q");
    QExt s(Rational(0), Rational(1), q.a());
    return s_pow(s, k);
  }
};

inline double s_abs(const QExt& x) { return std::abs(x.to_d()); }
inline double s_real(const QExt& x) { return x.to_d(); }
inline bool s_is_zero(const QExt& x) { return x.is_zero(); }

inline QContext<QExt> make_qext_context(const Rational& q, double eps = 1e-12,
                                        long max_terms = 10000) {
  if (!(q > 0 && q < 1)) fail(errc::validation, "q must lie in (0,1)");
  return QContext<QExt>(QExt(q, Rational(0), q), eps, max_terms);
}

}  // namespace qdha
