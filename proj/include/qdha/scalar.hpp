#pragma once

// Scalar layer: the whole library is templated on a scalar type T that is
// either a floating type (double, std::complex<double>) or an exact field
// (Rational, QExt = Q(sqrt(q)), RatFunc = Q(s) with q = s^2 formal).
// QContext<T> carries the deformation parameter and evaluation policy.

#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>

namespace qdha {

using Int = boost::multiprecision::cpp_int;
// et_off so arithmetic yields concrete values suitable for template deduction
using Rational =
    boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                  boost::multiprecision::et_off>;

// ---------------------------------------------------------------------------
// Errors

enum class errc {
  validation,      // bad parameter / unsupported in requested mode
  nonconvergence,  // series or quadrature failed to converge
  cap_exceeded,    // completion hit degree or iteration cap
  not_implemented, // operation intentionally unavailable
};

class error : public std::runtime_error {
public:
  error(errc c, const std::string& msg) : std::runtime_error(msg), code_(c) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw error(c, msg); }

// ---------------------------------------------------------------------------
// Basic rational helpers

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

inline Rational rat_pow(const Rational& x, long n) {
  if (n == 0) return Rational(1);
  if (n < 0) {
    if (x == 0) fail(errc::validation, "rat_pow: negative power of zero");
    return Rational(1) / rat_pow(x, -n);
  }
  Rational base = x, acc = 1;
  long e = n;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

// Exact square root of a nonnegative rational, if it is a perfect square.
inline std::optional<Rational> exact_sqrt(const Rational& x) {
  if (x < 0) return std::nullopt;
  if (x == 0) return Rational(0);
  Int num = boost::multiprecision::numerator(x);
  Int den = boost::multiprecision::denominator(x);
  Int rn = boost::multiprecision::sqrt(num);
  Int rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(rn, rd);
}

// ---------------------------------------------------------------------------
// Scalar traits

template <class T>
struct scalar_traits {
  static constexpr bool is_exact = false;
  static constexpr bool is_complex = false;
};

template <>
struct scalar_traits<double> {
  static constexpr bool is_exact = false;
  static constexpr bool is_complex = false;
};

template <>
struct scalar_traits<std::complex<double>> {
  static constexpr bool is_exact = false;
  static constexpr bool is_complex = true;
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_exact = true;
  static constexpr bool is_complex = false;
};

template <class T>
inline constexpr bool is_exact_v = scalar_traits<T>::is_exact;

// Magnitude estimate used by convergence checks on floating scalars.
inline double s_abs(double x) { return std::abs(x); }
inline double s_abs(const std::complex<double>& x) { return std::abs(x); }
inline double s_abs(const Rational& x) { return std::abs(to_double(x)); }

// best-effort real value, used for parameter-domain validation
inline double s_real(double x) { return x; }
inline double s_real(const std::complex<double>& x) { return x.real(); }
inline double s_real(const Rational& x) { return to_double(x); }

inline bool s_is_zero(double x) { return x == 0.0; }
inline bool s_is_zero(const std::complex<double>& x) { return x == std::complex<double>(0.0); }
inline bool s_is_zero(const Rational& x) { return x == 0; }

// conjugation hook; every real scalar type is self-conjugate
template <class T>
T s_conj(const T& x) {
  return x;
}
inline std::complex<double> s_conj(const std::complex<double>& x) { return std::conj(x); }

// Factory hooks: build scalars of type T given the context's q (needed by
// extension types that embed their base parameter).
template <class T>
struct scalar_maker {
  static T from_ratio(const T& /*q*/, long num, long den) {
    return T(static_cast<double>(num) / static_cast<double>(den));
  }
};

template <>
struct scalar_maker<Rational> {
  static Rational from_ratio(const Rational&, long num, long den) { return Rational(num, den); }
};

template <>
struct scalar_maker<std::complex<double>> {
  static std::complex<double> from_ratio(const std::complex<double>&, long num, long den) {
    return std::complex<double>(static_cast<double>(num) / static_cast<double>(den), 0.0);
  }
};

// Half-integer powers of q. Floating scalars always support them; Rational
// supports them only when q is a perfect square; extension types override.
template <class T>
struct half_power {
  static T pow(const T& q, long k) {  // q^{k/2}
    return std::pow(q, static_cast<T>(k) / static_cast<T>(2));
  }
};

template <>
struct half_power<std::complex<double>> {
  static std::complex<double> pow(const std::complex<double>& q, long k) {
    return std::pow(q, std::complex<double>(k / 2.0, 0.0));
  }
};

template <>
struct half_power<Rational> {
  static Rational pow(const Rational& q, long k) {
    if (k % 2 == 0) return rat_pow(q, k / 2);
    auto s = exact_sqrt(q);
    if (!s) fail(errc::validation, "half-integer power of q is not rational; use a scalar with sqrt(q)");
    return rat_pow(*s, k);
  }
};

// Generic integer power, negative exponents via division.
template <class T>
T s_pow(const T& x, long n) {
  if (n == 0) return T(1);
  if (n < 0) return T(1) / s_pow(x, -n);
  T base = x, acc(1);
  long e = n;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Evaluation context

template <class T>
struct QContext {
  T q;
  double eps = 1e-12;
  long max_terms = 10000;

  QContext() : q() {}
  explicit QContext(T q_, double eps_ = 1e-12, long max_terms_ = 10000)
      : q(std::move(q_)), eps(eps_), max_terms(max_terms_) {}

  T from_long(long n) const { return scalar_maker<T>::from_ratio(q, n, 1); }
  T from_ratio(long num, long den) const { return scalar_maker<T>::from_ratio(q, num, den); }

  T q_pow(long n) const { return s_pow(q, n); }
  // q^{k/2}; validation error if the scalar cannot represent sqrt(q)
  T q_half_pow(long k) const { return half_power<T>::pow(q, k); }

  QContext with_q(T newq) const {
    QContext c(*this);
    c.q = std::move(newq);
    return c;
  }

  // The same policy with the squared base; used for base-q^2 series.
  QContext with_q_squared() const { return with_q(q * q); }
};

inline QContext<double> make_context(double q, double eps = 1e-12, long max_terms = 10000) {
  if (!(q > 0.0 && q < 1.0)) fail(errc::validation, "q must lie in (0,1)");
  return QContext<double>(q, eps, max_terms);
}

inline QContext<Rational> make_context(const Rational& q, double eps = 1e-12,
                                        long max_terms = 10000) {
  if (!(q > 0 && q < 1)) fail(errc::validation, "q must lie in (0,1)");
  return QContext<Rational>(q, eps, max_terms);
}

}  // namespace qdha
