#pragma once

// Basic q-series toolkit: q-Pochhammer symbols, q-numbers and binomials,
// q-Gamma/Beta, Jackson integrals, basic hypergeometric series r_phi_s,
// q-exponentials and q-difference operators.
//
// Conventions: 0 < q < 1. r_phi_s carries the factor
// [(-1)^k q^{k(k-1)/2}]^{1+s-r}, so the series is entire for r < s+1,
// converges on |z| < 1 for r = s+1, and must terminate for r > s+1.

#include <functional>
#include <vector>

#include "poly.hpp"
#include "scalar.hpp"

namespace qdha {

// (a; q)_n for n >= 0
template <class T>
T q_pochhammer(const QContext<T>& ctx, const T& a, long n) {
  if (n >= 0) {
    T acc(1), p(1);
    for (long k = 0; k < n; ++k) {
      acc = acc * (T(1) - a * p);
      p = p * ctx.q;
    }
    return acc;
  }
  // (a; q)_{-m} = 1 / (a q^{-m}; q)_m
  long m = -n;
  T denom = q_pochhammer(ctx, a * ctx.q_pow(-m), m);
  if (s_is_zero(denom))
    fail(errc::validation, "q_pochhammer: negative index hits a vanishing factor");
  return T(1) / denom;
}

// product (a1,...,am; q)_k
template <class T>
T q_pochhammer_multi(const QContext<T>& ctx, const std::vector<T>& as, long n) {
  T acc(1);
  for (const auto& a : as) acc = acc * q_pochhammer(ctx, a, n);
  return acc;
}

// (a; q)_infty, floating scalars only
template <class T>
T q_pochhammer_inf(const QContext<T>& ctx, const T& a) {
  if constexpr (is_exact_v<T>) {
    fail(errc::validation, "q_pochhammer: infinite products are unavailable in exact mode");
  } else {
    if (s_abs(ctx.q) >= 1.0)
      fail(errc::validation, "q_pochhammer: infinite product diverges for |q| >= 1");
    T acc(1), p(1);
    const double qa = s_abs(ctx.q);
    for (long k = 0; k < ctx.max_terms; ++k) {
      acc = acc * (T(1) - a * p);
      p = p * ctx.q;
      // remaining log-tail is bounded by |a p|/(1 - |q|)
      if (s_abs(a * p) < ctx.eps * 1e-3 * (1.0 - qa)) return acc;
    }
    fail(errc::nonconvergence, "q_pochhammer: infinite product did not converge");
  }
}

// (a; q)_nu for real or complex nu: (a; q)_inf / (a q^nu; q)_inf, floating only
inline double q_pochhammer_real(const QContext<double>& ctx, double a, double nu) {
  double qnu = std::pow(ctx.q, nu);
  return q_pochhammer_inf(ctx, a) / q_pochhammer_inf(ctx, a * qnu);
}

inline std::complex<double> q_pochhammer_real(const QContext<std::complex<double>>& ctx,
                                              std::complex<double> a,
                                              std::complex<double> nu) {
  std::complex<double> qnu = std::pow(ctx.q, nu);
  return q_pochhammer_inf(ctx, a) / q_pochhammer_inf(ctx, a * qnu);
}

// symmetric q-integer [n]_q = (q^n - q^{-n})/(q - q^{-1})
template <class T>
T q_number(const QContext<T>& ctx, long n) {
  return (ctx.q_pow(n) - ctx.q_pow(-n)) / (ctx.q - T(1) / ctx.q);
}

inline double q_number(const QContext<double>& ctx, double lam) {
  double q = ctx.q;
  return (std::pow(q, lam) - std::pow(q, -lam)) / (q - 1.0 / q);
}

// one-sided bracket (1 - q^n)/(1 - q), the factor in [n]_q! and Gamma_q
template <class T>
T q_bracket(const QContext<T>& ctx, long n) {
  return (T(1) - ctx.q_pow(n)) / (T(1) - ctx.q);
}

template <class T>
T q_factorial(const QContext<T>& ctx, long n) {
  T acc(1);
  for (long k = 1; k <= n; ++k) acc = acc * q_bracket(ctx, k);
  return acc;
}

// Gaussian binomial (q; q)_n / ((q; q)_k (q; q)_{n-k})
template <class T>
T gauss_binomial(const QContext<T>& ctx, long n, long k) {
  if (k < 0 || k > n) fail(errc::validation, "gauss_binomial: need 0 <= k <= n");
  T acc(1);
  for (long j = 1; j <= k; ++j)
    acc = acc * (T(1) - ctx.q_pow(n - k + j)) / (T(1) - ctx.q_pow(j));
  return acc;
}

// Gamma_q at a positive integer: Gamma_q(n) = [n-1]_q!
template <class T>
T q_gamma_int(const QContext<T>& ctx, long n) {
  if (n <= 0) fail(errc::validation, "q_gamma: pole at nonpositive integer x");
  return q_factorial(ctx, n - 1);
}

// Gamma_q(x) = (q; q)_inf / (q^x; q)_inf * (1-q)^{1-x}
inline double q_gamma(const QContext<double>& ctx, double x) {
  if (x <= 0.0 && std::abs(x - std::round(x)) < 1e-12)
    fail(errc::validation, "q_gamma: pole at nonpositive integer x");
  double qx = std::pow(ctx.q, x);
  return q_pochhammer_inf(ctx, ctx.q) / q_pochhammer_inf(ctx, qx) *
         std::pow(1.0 - ctx.q, 1.0 - x);
}

// Gamma_{q}(x) for complex x (used by the Harish-Chandra c-function)
inline std::complex<double> q_gamma(const QContext<std::complex<double>>& ctx,
                                    std::complex<double> x) {
  std::complex<double> qx = std::pow(ctx.q, x);
  auto inf = [&](std::complex<double> a) { return q_pochhammer_inf(ctx, a); };
  std::complex<double> qq = inf(ctx.q);
  std::complex<double> den = inf(qx);
  if (std::abs(den) == 0.0) fail(errc::validation, "q_gamma: pole");
  return qq / den * std::pow(std::complex<double>(1.0) - ctx.q,
                             std::complex<double>(1.0) - x);
}

inline double q_beta(const QContext<double>& ctx, double x, double y) {
  return q_gamma(ctx, x) * q_gamma(ctx, y) / q_gamma(ctx, x + y);
}

template <class T>
T q_beta_int(const QContext<T>& ctx, long x, long y) {
  return q_gamma_int(ctx, x) * q_gamma_int(ctx, y) / q_gamma_int(ctx, x + y);
}

// ---------------------------------------------------------------------------
// Jackson integrals

// int_0^a f(t) d_q t = (1-q) a sum_j f(a q^j) q^j
template <class T, class F>
T jackson_01(const QContext<T>& ctx, F&& f, const T& a) {
  static_assert(!is_exact_v<T>, "use jackson_01_poly for exact scalars");
  T sum(0), p(1);
  double scale = 0.0;
  for (long j = 0; j < ctx.max_terms; ++j) {
    T term = f(a * p) * p;
    sum = sum + term;
    scale = std::max(scale, s_abs(sum));
    p = p * ctx.q;
    if (s_abs(term) < ctx.eps * std::max(1.0, scale) && j > 8)
      return (T(1) - ctx.q) * a * sum;
  }
  fail(errc::nonconvergence, "jackson_integral: series did not converge");
}

// Same integral for a polynomial integrand, exact in any field:
// int_0^a t^k d_q t = a^{k+1} (1-q) / (1-q^{k+1})
template <class T>
T jackson_01_poly(const QContext<T>& ctx, const Poly<T>& f, const T& a) {
  T sum(0), apow = a;  // apow = a^{k+1}
  for (long k = 0; k <= f.degree(); ++k) {
    sum = sum + f.coeff(k) * apow * (T(1) - ctx.q) / (T(1) - ctx.q_pow(k + 1));
    apow = apow * a;
  }
  return sum;
}

// int_1^inf f(x) d_{q^{-2}} x = (q^{-2}-1) sum_m f(q^{-2m}) q^{-2m}
template <class T, class F>
T jackson_1inf(const QContext<T>& ctx, F&& f) {
  static_assert(!is_exact_v<T>, "use jackson_1inf_finite for exact scalars");
  T sum(0);
  double scale = 0.0;
  for (long m = 0; m < ctx.max_terms; ++m) {
    T x = ctx.q_pow(-2 * m);
    T term = f(x) * x;
    sum = sum + term;
    scale = std::max(scale, s_abs(sum));
    if (s_abs(term) < ctx.eps * std::max(1.0, scale) && m > 8)
      return (ctx.q_pow(-2) - T(1)) * sum;
  }
  fail(errc::nonconvergence, "jackson_integral: series over (1,inf) did not converge");
}

// finite-support version: values[m] = f(q^{-2m})
template <class T>
T jackson_1inf_finite(const QContext<T>& ctx, const std::vector<T>& values) {
  T sum(0);
  for (size_t m = 0; m < values.size(); ++m)
    sum = sum + values[m] * ctx.q_pow(-2 * static_cast<long>(m));
  return (ctx.q_pow(-2) - T(1)) * sum;
}

// ---------------------------------------------------------------------------
// Basic hypergeometric series

// r_phi_s([a...], [b...]; q, z) with the standard extra factor for r != s+1.
// trunc < 0 means "use ctx.max_terms"; a nonterminating float series that
// reaches the cap returns the partial sum.
template <class T>
T basic_hyper(const QContext<T>& ctx, const std::vector<T>& upper,
              const std::vector<T>& lower, const T& z, long trunc = -1) {
  const long r = static_cast<long>(upper.size());
  const long s = static_cast<long>(lower.size());
  const long excess = 1 + s - r;
  const long cap = trunc >= 0 ? trunc : ctx.max_terms;

  // terminating iff some upper parameter is q^{-m}, m in Z_+
  long stop = -1;
  {
    T p(1);  // q^m
    for (long m = 0; m < ctx.max_terms; ++m) {
      for (const auto& a : upper) {
        bool hit;
        if constexpr (is_exact_v<T>)
          hit = (a * p == T(1));
        else
          hit = s_abs(a * p - T(1)) < 1e-12;
        if (hit) {
          stop = m;
          break;
        }
      }
      if (stop >= 0) break;
      p = p * ctx.q;
      if constexpr (!is_exact_v<T>) {
        if (s_abs(p) < 1e-300) break;
      }
    }
  }

  if (stop < 0) {
    if constexpr (is_exact_v<T>) {
      fail(errc::validation, "basic_hyper: nonterminating series is unavailable in exact mode");
    } else {
      if (r > s + 1)
        fail(errc::validation, "basic_hyper: divergent series (r > s+1 and nonterminating)");
      if (r == s + 1 && s_abs(z) >= 1.0)
        fail(errc::validation, "basic_hyper: argument outside convergence domain |z| < 1");
    }
  }

  T sum(1), term(1), p(1);  // p = q^k
  double scale = 1.0;
  for (long k = 0; stop < 0 || k < stop; ++k) {
    if (k >= cap) {
      if (stop >= 0)
        fail(errc::cap_exceeded, "basic_hyper: terminating index exceeds term cap");
      break;  // partial sum of a nonterminating series
    }
    T ratio(1);
    for (const auto& a : upper) ratio = ratio * (T(1) - a * p);
    for (const auto& b : lower) {
      T fac = T(1) - b * p;
      if (s_is_zero(fac))
        fail(errc::validation, "basic_hyper: lower parameter lies in q^{-Z+}");
      ratio = ratio / fac;
    }
    T fac = T(1) - ctx.q * p;  // (q; q) factor
    if (s_is_zero(fac)) fail(errc::validation, "basic_hyper: base factor vanished");
    ratio = ratio / fac;
    if (excess != 0) {
      // [(-1) q^k]^{excess}
      T extra = s_pow(T(0) - p, excess);
      ratio = ratio * extra;
    }
    double prev = 0.0;
    if constexpr (!is_exact_v<T>) prev = s_abs(term);
    term = term * ratio * z;
    if (s_is_zero(term) && stop < 0) break;
    sum = sum + term;
    p = p * ctx.q;
    if constexpr (!is_exact_v<T>) {
      scale = std::max(scale, s_abs(sum));
      if (stop < 0 && k > 4) {
        // geometric tail bound from the observed term ratio
        double cur = s_abs(term);
        double rho = prev > 0.0 ? cur / prev : 0.0;
        if (rho < 0.999 && cur * rho / (1.0 - rho) + cur < ctx.eps * scale) break;
      }
    }
  }
  return sum;
}

// ---------------------------------------------------------------------------
// q-exponentials

// e_q(z) = sum z^n/(q;q)_n = 1/(z;q)_inf, needs |z| < 1
inline double q_exp_small(const QContext<double>& ctx, double z) {
  if (std::abs(z) >= 1.0)
    fail(errc::validation, "q_exp: e_q is defined for |z| < 1");
  return 1.0 / q_pochhammer_inf(ctx, z);
}

// E_q(z) = sum q^{n(n-1)/2} z^n/(q;q)_n = (-z;q)_inf, entire
inline double q_exp_big(const QContext<double>& ctx, double z) {
  return q_pochhammer_inf(ctx, -z);
}

// ---------------------------------------------------------------------------
// q-difference operators

enum class QDiff { minus, plus, symmetric };

// minus:     (f(x) - f(qx)) / (x - qx)
// plus:      (f(q^{-1}x) - f(x)) / (x - qx)
// symmetric: (f(q^{-1}x) - f(qx)) / (q^{-1}x - qx)
template <class T, class F>
T q_diff(const QContext<T>& ctx, F&& f, const T& x, QDiff mode) {
  if (s_is_zero(x)) fail(errc::validation, "q_diff: x must be nonzero");
  switch (mode) {
    case QDiff::minus:
      return (f(x) - f(ctx.q * x)) / (x - ctx.q * x);
    case QDiff::plus:
      return (f(x / ctx.q) - f(x)) / (x - ctx.q * x);
    case QDiff::symmetric:
      return (f(x / ctx.q) - f(ctx.q * x)) / (x / ctx.q - ctx.q * x);
  }
  fail(errc::validation, "q_diff: unknown mode");
}

}  // namespace qdha
