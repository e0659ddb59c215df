#pragma once

// Five families of q-orthogonal polynomials: Askey-Wilson, Al-Salam-Chihara,
// continuous dual q-Hahn, little q-Jacobi, and q-Hahn. Each is evaluated by
// its explicit basic-hypergeometric formula and by its three-term recurrence;
// weights and closed-form norms are exposed for orthogonality testing.
//
// The trigonometric families live on x = cos(theta); their Pochhammer pairs
// (a e^{i theta}, a e^{-i theta}; q)_k are accumulated through the real
// product (1 - 2 a x q^j + a^2 q^{2j}), so evaluation stays in the base field
// for any real x, on or off the orthogonality interval.

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "qseries.hpp"

namespace qdha {

enum class Family {
  askey_wilson,
  al_salam_chihara,
  cont_dual_q_hahn,
  little_q_jacobi,
  q_hahn
};

enum class OrthMode { explicit_form, recurrence };

template <class T>
struct FamilySpec {
  Family family;
  std::vector<T> params;
  long N = 0;  // q_hahn grid size
};

namespace detail {

template <class T>
bool conjugation_closed(const std::vector<T>& ps) {
  if constexpr (scalar_traits<T>::is_complex) {
    for (const auto& p : ps) {
      if (std::abs(p.imag()) < 1e-14) continue;
      bool paired = false;
      for (const auto& r : ps)
        if (s_abs(r - std::conj(p)) < 1e-12) paired = true;
      if (!paired) return false;
    }
  }
  return true;
}

}  // namespace detail

template <class T>
FamilySpec<T> make_family(const QContext<T>& ctx, Family family, std::vector<T> params,
                          long N = 0) {
  const double qd = s_real(ctx.q);
  switch (family) {
    case Family::askey_wilson:
      if (params.size() != 4) fail(errc::validation, "askey_wilson needs (a,b,c,d)");
      if (s_is_zero(params[0])) fail(errc::validation, "askey_wilson needs a != 0");
      break;
    case Family::al_salam_chihara:
      if (params.size() != 2) fail(errc::validation, "al_salam_chihara needs (a,b)");
      if (s_is_zero(params[0])) fail(errc::validation, "al_salam_chihara needs a != 0");
      if (s_abs(params[0]) >= 1.0 || s_abs(params[1]) >= 1.0)
        fail(errc::validation, "al_salam_chihara needs |a|, |b| < 1");
      if (!detail::conjugation_closed(params))
        fail(errc::validation, "al_salam_chihara parameters must be real or conjugate");
      break;
    case Family::cont_dual_q_hahn:
      if (params.size() != 3) fail(errc::validation, "cont_dual_q_hahn needs (a,b,c)");
      if (s_is_zero(params[0])) fail(errc::validation, "cont_dual_q_hahn needs a != 0");
      for (const auto& p : params)
        if (s_abs(p) >= 1.0)
          fail(errc::validation, "cont_dual_q_hahn needs parameter moduli < 1");
      if (!detail::conjugation_closed(params))
        fail(errc::validation, "cont_dual_q_hahn parameters must be real or conjugate");
      break;
    case Family::little_q_jacobi: {
      if (params.size() != 2) fail(errc::validation, "little_q_jacobi needs (a,b)");
      double a = s_real(params[0]), b = s_real(params[1]);
      if (!(a > 0.0 && a < 1.0 / qd && b < 1.0 / qd))
        fail(errc::validation, "little_q_jacobi needs 0 < a < 1/q and b < 1/q");
      break;
    }
    case Family::q_hahn: {
      if (params.size() != 2) fail(errc::validation, "q_hahn needs (alpha,beta)");
      if (N < 1) fail(errc::validation, "q_hahn needs N >= 1");
      double al = s_real(params[0]), be = s_real(params[1]);
      double qN = std::pow(qd, -static_cast<double>(N));
      bool low = al > 0.0 && al < 1.0 / qd && be > 0.0 && be < 1.0 / qd;
      bool high = al > qN && be > qN;
      if (!(low || high))
        fail(errc::validation,
             "q_hahn needs 0 < alpha,beta < 1/q or alpha,beta > q^{-N}");
      break;
    }
  }
  return FamilySpec<T>{family, std::move(params), N};
}

namespace detail {

// (a e^{i theta}, a e^{-i theta}; q)-pair factor at level j: 1 - 2axq^j + a^2 q^{2j}
template <class T>
T trig_pair_factor(const T& a, const T& x, const T& qj) {
  return T(1) - T(2) * a * x * qj + a * a * qj * qj;
}

// shared terminating-series evaluator for the three trigonometric families;
// uppers are q^{-n} [, S] and the a-pair; lowers given explicitly.
template <class T>
T trig_explicit(const QContext<T>& ctx, long n, const T& a, const T& x,
                const std::vector<T>& lowers, const T* balancing) {
  T sum(0), term(1), p(1);  // p = q^k
  for (long k = 0; k <= n; ++k) {
    sum = sum + term;
    if (k == n) break;
    T num = (T(1) - ctx.q_pow(-n) * p) * trig_pair_factor(a, x, p);
    if (balancing) num = num * (T(1) - (*balancing) * p);
    T den = T(1) - ctx.q * p;  // (q; q)_k step
    for (const auto& b : lowers) den = den * (T(1) - b * p);
    if (s_is_zero(den)) fail(errc::validation, "orth_eval: vanishing lower factor");
    term = term * num / den * ctx.q;
    p = p * ctx.q;
  }
  return sum;
}

template <class T>
T trig_explicit(const QContext<T>& ctx, long n, const T& a, const T& x,
                const std::vector<T>& lowers) {
  return trig_explicit(ctx, n, a, x, lowers, static_cast<const T*>(nullptr));
}

// q_hahn points must sit on the grid {q^{-x}: 0 <= x <= N}
template <class T>
long hahn_grid_index(const QContext<T>& ctx, const FamilySpec<T>& spec, const T& point) {
  for (long x = 0; x <= spec.N; ++x) {
    T gx = ctx.q_pow(-x);
    if constexpr (is_exact_v<T>) {
      if (point == gx) return x;
    } else {
      if (s_abs(point - gx) <= 1e-9 * s_abs(gx)) return x;
    }
  }
  fail(errc::validation, "q_hahn: point is not a grid value q^{-x}, 0 <= x <= N");
}

}  // namespace detail

template <class T>
T orth_eval(const QContext<T>& ctx, const FamilySpec<T>& spec, long n, const T& point,
            OrthMode mode = OrthMode::explicit_form) {
  if (n < 0) fail(errc::validation, "orth_eval: n must be nonnegative");
  const auto& ps = spec.params;
  const T& q = ctx.q;

  if (spec.family == Family::q_hahn) {
    if (n > spec.N) fail(errc::validation, "orth_eval: q_hahn needs n <= N");
    (void)detail::hahn_grid_index(ctx, spec, point);
  }

  if (mode == OrthMode::explicit_form) {
    switch (spec.family) {
      case Family::askey_wilson: {
        const T &a = ps[0], &b = ps[1], &c = ps[2], &d = ps[3];
        T bal = a * b * c * d * ctx.q_pow(n - 1);
        T pref = q_pochhammer(ctx, a * b, n) * q_pochhammer(ctx, a * c, n) *
                 q_pochhammer(ctx, a * d, n) / s_pow(a, n);
        return pref *
               detail::trig_explicit(ctx, n, a, point, {a * b, a * c, a * d}, &bal);
      }
      case Family::cont_dual_q_hahn: {
        const T &a = ps[0], &b = ps[1], &c = ps[2];
        T pref = q_pochhammer(ctx, a * b, n) * q_pochhammer(ctx, a * c, n) / s_pow(a, n);
        return pref * detail::trig_explicit(ctx, n, a, point, {a * b, a * c});
      }
      case Family::al_salam_chihara: {
        const T &a = ps[0], &b = ps[1];
        T pref = q_pochhammer(ctx, a * b, n) / s_pow(a, n);
        return pref * detail::trig_explicit(ctx, n, a, point, {a * b});
      }
      case Family::little_q_jacobi: {
        const T &a = ps[0], &b = ps[1];
        return basic_hyper(ctx, {ctx.q_pow(-n), a * b * ctx.q_pow(n + 1)}, {a * q},
                           q * point);
      }
      case Family::q_hahn: {
        const T &al = ps[0], &be = ps[1];
        return basic_hyper(ctx, {ctx.q_pow(-n), al * be * ctx.q_pow(n + 1), point},
                           {al * q, ctx.q_pow(-spec.N)}, q);
      }
    }
    fail(errc::validation, "orth_eval: unknown family");
  }

  // recurrence mode
  T prev(0), cur(1);  // p_{-1}, p_0
  switch (spec.family) {
    case Family::askey_wilson: {
      const T &a = ps[0], &b = ps[1], &c = ps[2], &d = ps[3];
      T abcd = a * b * c * d;
      for (long k = 0; k < n; ++k) {
        T A;
        if (k == 0) {
          T den = a * (T(1) - abcd);
          if (s_is_zero(den)) fail(errc::validation, "orth_eval: recurrence pole");
          A = (T(1) - a * b) * (T(1) - a * c) * (T(1) - a * d) / den;
        } else {
          T den = a * (T(1) - abcd * ctx.q_pow(2 * k - 1)) *
                  (T(1) - abcd * ctx.q_pow(2 * k));
          if (s_is_zero(den)) fail(errc::validation, "orth_eval: recurrence pole");
          A = (T(1) - a * b * ctx.q_pow(k)) * (T(1) - a * c * ctx.q_pow(k)) *
              (T(1) - a * d * ctx.q_pow(k)) * (T(1) - abcd * ctx.q_pow(k - 1)) / den;
        }
        T C(0);
        if (k > 0) {
          T den = (T(1) - abcd * ctx.q_pow(2 * k - 2)) *
                  (T(1) - abcd * ctx.q_pow(2 * k - 1));
          if (s_is_zero(den)) fail(errc::validation, "orth_eval: recurrence pole");
          C = a * (T(1) - ctx.q_pow(k)) * (T(1) - b * c * ctx.q_pow(k - 1)) *
              (T(1) - b * d * ctx.q_pow(k - 1)) * (T(1) - c * d * ctx.q_pow(k - 1)) /
              den;
        }
        if (s_is_zero(A)) fail(errc::validation, "orth_eval: recurrence pole");
        T next = ((T(2) * point - a - T(1) / a + A + C) * cur - C * prev) / A;
        prev = cur;
        cur = next;
      }
      return cur * q_pochhammer(ctx, a * b, n) * q_pochhammer(ctx, a * c, n) *
             q_pochhammer(ctx, a * d, n) / s_pow(a, n);
    }
    case Family::cont_dual_q_hahn: {
      const T &a = ps[0], &b = ps[1], &c = ps[2];
      for (long k = 0; k < n; ++k) {
        T A = (T(1) - a * b * ctx.q_pow(k)) * (T(1) - a * c * ctx.q_pow(k)) / a;
        T C = a * (T(1) - ctx.q_pow(k)) * (T(1) - b * c * ctx.q_pow(k - 1));
        if (s_is_zero(A)) fail(errc::validation, "orth_eval: recurrence pole");
        T next = ((T(2) * point - a - T(1) / a + A + C) * cur - C * prev) / A;
        prev = cur;
        cur = next;
      }
      return cur * q_pochhammer(ctx, a * b, n) * q_pochhammer(ctx, a * c, n) /
             s_pow(a, n);
    }
    case Family::al_salam_chihara: {
      const T &a = ps[0], &b = ps[1];
      for (long k = 0; k < n; ++k) {
        T next = (T(2) * point - (a + b) * ctx.q_pow(k)) * cur -
                 (T(1) - ctx.q_pow(k)) * (T(1) - a * b * ctx.q_pow(k - 1)) * prev;
        prev = cur;
        cur = next;
      }
      return cur;
    }
    case Family::little_q_jacobi: {
      const T &a = ps[0], &b = ps[1];
      T ab = a * b;
      for (long k = 0; k < n; ++k) {
        T dA = (T(1) - ab * ctx.q_pow(2 * k + 1)) * (T(1) - ab * ctx.q_pow(2 * k + 2));
        if (s_is_zero(dA)) fail(errc::validation, "orth_eval: recurrence pole");
        T A = ctx.q_pow(k) * (T(1) - a * ctx.q_pow(k + 1)) *
              (T(1) - ab * ctx.q_pow(k + 1)) / dA;
        T C(0);
        if (k > 0) {
          T dC = (T(1) - ab * ctx.q_pow(2 * k)) * (T(1) - ab * ctx.q_pow(2 * k + 1));
          if (s_is_zero(dC)) fail(errc::validation, "orth_eval: recurrence pole");
          C = a * ctx.q_pow(k) * (T(1) - ctx.q_pow(k)) * (T(1) - b * ctx.q_pow(k)) / dC;
        }
        if (s_is_zero(A)) fail(errc::validation, "orth_eval: recurrence pole");
        T next = ((A + C - point) * cur - C * prev) / A;
        prev = cur;
        cur = next;
      }
      return cur;
    }
    case Family::q_hahn: {
      const T &al = ps[0], &be = ps[1];
      T ab = al * be;
      for (long k = 0; k < n; ++k) {
        T dA = (T(1) - ab * ctx.q_pow(2 * k + 1)) * (T(1) - ab * ctx.q_pow(2 * k + 2));
        if (s_is_zero(dA)) fail(errc::validation, "orth_eval: recurrence pole");
        T A = (T(1) - ctx.q_pow(k - spec.N)) * (T(1) - al * ctx.q_pow(k + 1)) *
              (T(1) - ab * ctx.q_pow(k + 1)) / dA;
        T C(0);
        if (k > 0) {
          T dC = (T(1) - ab * ctx.q_pow(2 * k)) * (T(1) - ab * ctx.q_pow(2 * k + 1));
          if (s_is_zero(dC)) fail(errc::validation, "orth_eval: recurrence pole");
          C = T(0) - al * ctx.q_pow(k - spec.N) * (T(1) - ctx.q_pow(k)) *
                         (T(1) - ab * ctx.q_pow(k + spec.N + 1)) *
                         (T(1) - be * ctx.q_pow(k)) / dC;
        }
        if (s_is_zero(A)) fail(errc::validation, "orth_eval: recurrence pole");
        T next = ((A + C - (T(1) - point)) * cur - C * prev) / A;
        prev = cur;
        cur = next;
      }
      return cur;
    }
  }
  fail(errc::validation, "orth_eval: unknown family");
}

// h(x, alpha) = prod_k (1 - 2 alpha x q^k + alpha^2 q^{2k}), floating only
template <class T>
T trig_h(const QContext<T>& ctx, const T& x, const T& alpha) {
  static_assert(!is_exact_v<T>, "trig_h needs floating scalars");
  T acc(1), p(1);
  const double qa = s_abs(ctx.q);
  for (long k = 0; k < ctx.max_terms; ++k) {
    acc = acc * detail::trig_pair_factor(alpha, x, p);
    p = p * ctx.q;
    double bound = s_abs(alpha) * s_abs(p) * (2.0 * s_abs(x) + s_abs(alpha) + 1.0);
    if (bound < ctx.eps * 1e-3 * (1.0 - qa)) return acc;
  }
  fail(errc::nonconvergence, "trig_h: product did not converge");
}

template <class T>
T orth_weight(const QContext<T>& ctx, const FamilySpec<T>& spec, const T& point) {
  const auto& ps = spec.params;
  switch (spec.family) {
    case Family::askey_wilson:
    case Family::cont_dual_q_hahn:
    case Family::al_salam_chihara: {
      if constexpr (is_exact_v<T>) {
        fail(errc::validation, "orth_weight: continuous weights need float mode");
      } else {
        if (s_abs(point) > 1.0)
          fail(errc::validation, "orth_weight: point outside [-1,1]");
        T sq = std::sqrt(ctx.q);
        T num = trig_h(ctx, point, T(1)) * trig_h(ctx, point, T(-1)) *
                trig_h(ctx, point, sq) * trig_h(ctx, point, T(0) - sq);
        T den(1);
        for (const auto& a : ps) den = den * trig_h(ctx, point, a);
        return num / den;
      }
    }
    case Family::little_q_jacobi: {
      // grid point q^k; weight (bq; q)_k / (q; q)_k (aq)^k
      long k = -1;
      for (long j = 0; j < ctx.max_terms; ++j) {
        T gx = ctx.q_pow(j);
        if constexpr (is_exact_v<T>) {
          if (point == gx) {
            k = j;
            break;
          }
        } else {
          if (s_abs(point - gx) <= 1e-9 * s_abs(gx)) {
            k = j;
            break;
          }
        }
        if (s_real(gx) < s_real(point) * 0.5) break;
      }
      if (k < 0) fail(errc::validation, "orth_weight: point is not a grid value q^k");
      const T &a = ps[0], &b = ps[1];
      return q_pochhammer(ctx, b * ctx.q, k) / q_pochhammer(ctx, ctx.q, k) *
             s_pow(a * ctx.q, k);
    }
    case Family::q_hahn: {
      long x = detail::hahn_grid_index(ctx, spec, point);
      const T &al = ps[0], &be = ps[1];
      T num = q_pochhammer(ctx, al * ctx.q, x) * q_pochhammer(ctx, ctx.q_pow(-spec.N), x);
      T den = q_pochhammer(ctx, ctx.q, x) *
              q_pochhammer(ctx, ctx.q_pow(-spec.N) / be, x);
      return num / den * s_pow(al * be * ctx.q, -x);
    }
  }
  fail(errc::validation, "orth_weight: unknown family");
}

template <class T>
T orth_norm(const QContext<T>& ctx, const FamilySpec<T>& spec, long n) {
  if (n < 0) fail(errc::validation, "orth_norm: n must be nonnegative");
  const auto& ps = spec.params;
  const T& q = ctx.q;
  switch (spec.family) {
    case Family::askey_wilson:
      fail(errc::not_implemented,
           "orth_norm: askey_wilson measure has a discrete part; norm not provided");
    case Family::al_salam_chihara: {
      if constexpr (is_exact_v<T>) {
        fail(errc::validation, "orth_norm: al_salam_chihara norm needs float mode");
      } else {
        return T(1) / (q_pochhammer_inf(ctx, ctx.q_pow(n + 1)) *
                       q_pochhammer_inf(ctx, ps[0] * ps[1] * ctx.q_pow(n)));
      }
    }
    case Family::cont_dual_q_hahn: {
      if constexpr (is_exact_v<T>) {
        fail(errc::validation, "orth_norm: cont_dual_q_hahn norm needs float mode");
      } else {
        const T &a = ps[0], &b = ps[1], &c = ps[2];
        return T(1) / (q_pochhammer_inf(ctx, ctx.q_pow(n + 1)) *
                       q_pochhammer_inf(ctx, a * b * ctx.q_pow(n)) *
                       q_pochhammer_inf(ctx, a * c * ctx.q_pow(n)) *
                       q_pochhammer_inf(ctx, b * c * ctx.q_pow(n)));
      }
    }
    case Family::little_q_jacobi: {
      if constexpr (is_exact_v<T>) {
        fail(errc::validation, "orth_norm: little_q_jacobi norm needs float mode");
      } else {
        const T &a = ps[0], &b = ps[1];
        T ab = a * b;
        T head = q_pochhammer_inf(ctx, ab * q * q) * (T(1) - ab * q) *
                 s_pow(a * q, n) /
                 (q_pochhammer_inf(ctx, a * q) * (T(1) - ab * ctx.q_pow(2 * n + 1)));
        T tail = q_pochhammer(ctx, q, n) * q_pochhammer(ctx, b * q, n) /
                 (q_pochhammer(ctx, a * q, n) * q_pochhammer(ctx, ab * q, n));
        return head * tail;
      }
    }
    case Family::q_hahn: {
      if (n > spec.N) fail(errc::validation, "orth_norm: q_hahn needs n <= N");
      const T &al = ps[0], &be = ps[1];
      T ab = al * be;
      long N = spec.N;
      T head = q_pochhammer(ctx, ab * q * q, N) /
               (q_pochhammer(ctx, be * q, N) * s_pow(al * q, N));
      T mid = q_pochhammer(ctx, q, n) * q_pochhammer(ctx, ab * ctx.q_pow(N + 2), n) *
              q_pochhammer(ctx, be * q, n) /
              (q_pochhammer(ctx, al * q, n) * q_pochhammer(ctx, ab * q, n) *
               q_pochhammer(ctx, ctx.q_pow(-N), n));
      T last = (T(1) - ab * q) * s_pow(T(0) - al * q, n) /
               (T(1) - ab * ctx.q_pow(2 * n + 1));
      T qexp = ctx.q_pow(n * (n - 1) / 2 - N * n);
      return head * mid * last * qexp;
    }
  }
  fail(errc::validation, "orth_norm: unknown family");
}

// (1/2pi) int_{-1}^{1} p_m p_n w(x)/sqrt(1-x^2) dx for the trigonometric
// families, computed as (1/2pi) int_0^pi p_m p_n w(cos theta) d theta by
// panel-doubling Simpson quadrature refined until successive estimates
// differ by less than eps/10.
inline double orth_inner_product(const QContext<double>& ctx,
                                 const FamilySpec<double>& spec, long m, long n) {
  if (spec.family != Family::al_salam_chihara &&
      spec.family != Family::cont_dual_q_hahn && spec.family != Family::askey_wilson)
    fail(errc::validation, "orth_inner_product: continuous families only");

  auto f = [&](double theta) {
    double x = std::cos(theta);
    return orth_eval(ctx, spec, m, x) * orth_eval(ctx, spec, n, x) *
           orth_weight(ctx, spec, x);
  };
  const double pi = 3.14159265358979323846;

  auto simpson = [&](long panels) {
    double h = pi / static_cast<double>(panels);
    double acc = f(0.0) + f(pi);
    for (long i = 1; i < panels; ++i)
      acc += f(h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
  };

  double prev = simpson(32);
  for (long panels = 64; panels <= (1L << 20); panels *= 2) {
    double cur = simpson(panels);
    if (std::abs(cur - prev) < ctx.eps / 10.0) return cur / (2.0 * pi);
    prev = cur;
  }
  fail(errc::nonconvergence, "orth_inner_product: quadrature did not converge");
}

}  // namespace qdha
