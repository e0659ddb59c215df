#pragma once

// Weighted Bergman spaces on the quantum disc. The weight lambda > 1 enters
// every formula through u = q^{2 lambda} and t = q^{2(lambda-1)}: monomial
// norms ||z^n||^2 = (q^2;q^2)_n / (u;q^2)_n, Toeplitz operators in the basis
// {z^n} (shifts, diagonal radial symbols via the Jackson quotient), kernel
// coefficients, covariant symbols of normally ordered operator tables, the
// Berezin transform as a series in t over the radial Laplacian, and the
// induced star product on Pol(C)_q as a formal power series in t.
//
// Matrix convention: entry[m][n] is the coefficient of z^m in (A z^n), so a
// truncated product (AB)_{mn} is exact whenever the intermediate degree stays
// below the truncation; for normally ordered words z^i z*^j it always does.

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "qdisc.hpp"
#include "qseries.hpp"
#include "scalar.hpp"
#include "spectral.hpp"

namespace qdha {

// ---------------------------------------------------------------------------
// Weight parameter

template <class T>
struct WeightedSpace {
  double lambda = 2.0;
  T q2l;  // q^{2 lambda}
  T t;    // q^{2 (lambda - 1)}
};

template <class T>
WeightedSpace<T> weighted_space(const QContext<T>& ctx, long lambda) {
  if (lambda <= 1) fail(errc::validation, "weighted_space: need lambda > 1");
  return {static_cast<double>(lambda), ctx.q_pow(2 * lambda), ctx.q_pow(2 * (lambda - 1))};
}

inline WeightedSpace<double> weighted_space(const QContext<double>& ctx, double lambda) {
  if (!(lambda > 1.0)) fail(errc::validation, "weighted_space: need lambda > 1");
  double q2l = std::exp(2.0 * lambda * std::log(ctx.q));
  return {lambda, q2l, q2l / (ctx.q * ctx.q)};
}

// ---------------------------------------------------------------------------
// Norms and kernel coefficients

// ||z^n||^2 = (q^2; q^2)_n / (q^{2 lambda}; q^2)_n
template <class T>
T monomial_norm(const QContext<T>& ctx, const WeightedSpace<T>& sp, long n) {
  if (n < 0) fail(errc::validation, "monomial_norm: need n >= 0");
  const QContext<T> c2 = ctx.with_q_squared();
  return q_pochhammer(c2, ctx.q_pow(2), n) / q_pochhammer(c2, sp.q2l, n);
}

// coefficient of (z zeta*)^m in the reproducing kernel; reciprocal of the norm
template <class T>
T bergman_kernel_coeff(const QContext<T>& ctx, const WeightedSpace<T>& sp, long m) {
  if (m < 0) fail(errc::validation, "bergman_kernel_coeff: need m >= 0");
  const QContext<T> c2 = ctx.with_q_squared();
  return q_pochhammer(c2, sp.q2l, m) / q_pochhammer(c2, ctx.q_pow(2), m);
}

// ---------------------------------------------------------------------------
// Toeplitz operators on the monomial basis

template <class T>
struct ToeplitzMatrix {
  long n = 0;
  std::vector<T> e;  // row-major n x n

  explicit ToeplitzMatrix(long n_ = 0) : n(n_), e(static_cast<size_t>(n_ * n_), T(0)) {}
  T& at(long i, long j) { return e[static_cast<size_t>(i * n + j)]; }
  const T& at(long i, long j) const { return e[static_cast<size_t>(i * n + j)]; }

  static ToeplitzMatrix identity(long n) {
    ToeplitzMatrix r(n);
    for (long i = 0; i < n; ++i) r.at(i, i) = T(1);
    return r;
  }

  ToeplitzMatrix scaled(const T& s) const {
    ToeplitzMatrix r(n);
    for (size_t i = 0; i < e.size(); ++i) r.e[i] = e[i] * s;
    return r;
  }
  friend ToeplitzMatrix operator+(const ToeplitzMatrix& a, const ToeplitzMatrix& b) {
    if (a.n != b.n) fail(errc::validation, "ToeplitzMatrix: dimension mismatch");
    ToeplitzMatrix r(a.n);
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
  }
  friend ToeplitzMatrix operator-(const ToeplitzMatrix& a, const ToeplitzMatrix& b) {
    if (a.n != b.n) fail(errc::validation, "ToeplitzMatrix: dimension mismatch");
    ToeplitzMatrix r(a.n);
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
  }
  friend ToeplitzMatrix operator*(const ToeplitzMatrix& a, const ToeplitzMatrix& b) {
    if (a.n != b.n) fail(errc::validation, "ToeplitzMatrix: dimension mismatch");
    ToeplitzMatrix r(a.n);
    for (long i = 0; i < a.n; ++i)
      for (long k = 0; k < a.n; ++k) {
        if (s_is_zero(a.at(i, k))) continue;
        for (long j = 0; j < a.n; ++j) r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
      }
    return r;
  }
  friend bool operator==(const ToeplitzMatrix& a, const ToeplitzMatrix& b) {
    return a.n == b.n && a.e == b.e;
  }
};

// diagonal action of a radial symbol chi(y):
//   chi^ z^n = [ sum_k t^k (q^{2(k+1)}; q^2)_n chi(q^{2(n+k)}) ] z^n
//              * (t; q^2)_{n+1} / (q^2; q^2)_n
// (Jackson-quotient form; the polynomial part of chi folds termwise into
// y^m -> q^{2mn} (t; q^2)_m / (q^{2 lambda} q^{2n}; q^2)_m.)
template <class T>
T radial_toeplitz_eigenvalue(const QContext<T>& ctx, const WeightedSpace<T>& sp,
                             const RadialCoeff<T>& chi, long n) {
  if (n < 0) fail(errc::validation, "radial_toeplitz_eigenvalue: need n >= 0");
  const QContext<T> c2 = ctx.with_q_squared();
  T acc(0);
  for (long m = 0; m <= chi.poly.degree(); ++m) {
    T cm = chi.poly.coeff(m);
    if (s_is_zero(cm)) continue;
    acc = acc + cm * ctx.q_pow(2 * m * n) * q_pochhammer(c2, sp.t, m) /
                    q_pochhammer(c2, sp.q2l * ctx.q_pow(2 * n), m);
  }
  if (!chi.spikes.empty()) {
    const T norm_fac = q_pochhammer(c2, sp.t, n + 1) / q_pochhammer(c2, ctx.q_pow(2), n);
    for (const auto& [k, v] : chi.spikes) {
      if (k < n) continue;
      acc = acc + v * s_pow(sp.t, k - n) * q_pochhammer(c2, ctx.q_pow(2 * (k - n + 1)), n) *
                      norm_fac;
    }
  }
  return acc;
}

template <class T>
struct ToeplitzSymbol {
  enum class Kind { shift, shift_star, power_of_y, radial };
  Kind kind = Kind::shift;
  long k = 0;
  RadialCoeff<T> chi;

  static ToeplitzSymbol z() { return {Kind::shift, 0, {}}; }
  static ToeplitzSymbol z_star() { return {Kind::shift_star, 0, {}}; }
  static ToeplitzSymbol y_power(long k) { return {Kind::power_of_y, k, {}}; }
  static ToeplitzSymbol radial(RadialCoeff<T> chi) {
    return {Kind::radial, 0, std::move(chi)};
  }
};

template <class T>
ToeplitzMatrix<T> toeplitz_matrix(const QContext<T>& ctx, const WeightedSpace<T>& sp,
                                  const ToeplitzSymbol<T>& sym, long n) {
  if (n < 2) fail(errc::validation, "toeplitz_matrix: need N >= 2");
  ToeplitzMatrix<T> r(n);
  switch (sym.kind) {
    case ToeplitzSymbol<T>::Kind::shift:
      for (long j = 0; j + 1 < n; ++j) r.at(j + 1, j) = T(1);
      break;
    case ToeplitzSymbol<T>::Kind::shift_star:
      // z*^ z^j = (1 - q^{2j}) / (1 - t q^{2j}) z^{j-1}, zero on constants
      for (long j = 1; j < n; ++j)
        r.at(j - 1, j) = (T(1) - ctx.q_pow(2 * j)) / (T(1) - sp.t * ctx.q_pow(2 * j));
      break;
    case ToeplitzSymbol<T>::Kind::power_of_y: {
      if (sym.k < 0) fail(errc::validation, "toeplitz_matrix: y_power needs k >= 0");
      const QContext<T> c2 = ctx.with_q_squared();
      for (long j = 0; j < n; ++j)
        r.at(j, j) = ctx.q_pow(2 * sym.k * j) * q_pochhammer(c2, sp.t, sym.k) /
                     q_pochhammer(c2, sp.q2l * ctx.q_pow(2 * j), sym.k);
      break;
    }
    case ToeplitzSymbol<T>::Kind::radial:
      for (long j = 0; j < n; ++j) r.at(j, j) = radial_toeplitz_eigenvalue(ctx, sp, sym.chi, j);
      break;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Covariant symbols

// one normally ordered term: value * z^a (z*)^b
template <class T>
struct MonomialCoeff {
  long a = 0;
  long b = 0;
  T value;
};

// matrix of sum_{ab} value_{ab} z^a (z*)^b on {z^n}: the (m, n) entry is
//   sum_{j <= min(m,n)} ||z^n||^2 / ||z^j||^2 * value_{m-j, n-j}
template <class T>
ToeplitzMatrix<T> covariant_symbol_matrix(const QContext<T>& ctx, const WeightedSpace<T>& sp,
                                          const std::vector<MonomialCoeff<T>>& table, long n) {
  if (n < 1) fail(errc::validation, "covariant_symbol_matrix: need N >= 1");
  std::map<std::pair<long, long>, T> a;
  for (const auto& mc : table) {
    if (mc.a < 0 || mc.b < 0)
      fail(errc::validation, "covariant_symbol_matrix: negative monomial degree");
    auto [it, fresh] = a.try_emplace({mc.a, mc.b}, mc.value);
    if (!fresh) it->second = it->second + mc.value;
  }
  std::vector<T> norm;
  norm.reserve(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) norm.push_back(monomial_norm(ctx, sp, i));
  ToeplitzMatrix<T> r(n);
  for (long m = 0; m < n; ++m)
    for (long c = 0; c < n; ++c)
      for (long j = 0; j <= std::min(m, c); ++j) {
        auto it = a.find({m - j, c - j});
        if (it == a.end()) continue;
        r.at(m, c) = r.at(m, c) + norm[static_cast<size_t>(c)] /
                                      norm[static_cast<size_t>(j)] * it->second;
      }
  return r;
}

// normally ordered expansion f = sum value z^a (z*)^b of a polynomial element;
// the radial basis is z^k (z*)^k = (y; q^{-2})_k, a triangular change of basis
template <class T>
std::vector<MonomialCoeff<T>> pol_monomial_table(const QContext<T>& ctx,
                                                 const PolElement<T>& f) {
  std::vector<MonomialCoeff<T>> out;
  for (const auto& [m, psi] : f.coeffs) {
    if (!psi.spikes.empty())
      fail(errc::validation, "pol_monomial_table: grid corrections have no monomial expansion");
    Poly<T> rem = psi.poly;
    while (!rem.is_zero()) {
      const long d = rem.degree();
      // leading coefficient of (y; q^{-2})_d is (-1)^d q^{-d(d-1)}
      T lead = (d % 2 == 0 ? T(1) : T(0) - T(1)) * ctx.q_pow(-d * (d - 1));
      T gamma = rem.coeff(d) / lead;
      Poly<T> basis(T(1));
      for (long i = 0; i < d; ++i) {
        Poly<T> fac;
        fac.c = {T(1), T(0) - ctx.q_pow(-2 * i)};
        basis = basis * fac;
      }
      rem = rem - basis.scaled(gamma);
      rem.trim();
      out.push_back({m >= 0 ? m + d : d, m >= 0 ? d : d - m, gamma});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Berezin transform

// p_j(x) = sum_{k<=j} (q^{-2j};q^2)_k q^{2k} / ((q^2;q^2)_k)^2
//          * prod_{i<k} ((1-q^{2i})(1-q^{2i+2}) + q^{2i}(1-q^2)^2 x),
// the eigenvalue polynomials of the transform: p_j applied to the radial
// Laplacian sends the vacuum indicator to q^{2j} times the level-j indicator.
template <class T>
struct BerezinPoly {
  long j = 0;
  std::vector<T> coeff;  // coeff[d] multiplies x^d

  T eval(const T& x) const {
    T acc(0);
    for (size_t d = coeff.size(); d-- > 0;) acc = acc * x + coeff[d];
    return acc;
  }
};

template <class T>
BerezinPoly<T> p_poly(const QContext<T>& ctx, long j) {
  if (j < 0) fail(errc::validation, "p_poly: need j >= 0");
  const T Q = ctx.q_pow(2);
  const T qm2j = ctx.q_pow(-2 * j);
  std::vector<T> acc{T(1)};
  std::vector<T> prod{T(1)};
  T scal(1);
  for (long k = 1; k <= j; ++k) {
    const T Qi = ctx.q_pow(2 * (k - 1));
    const T A = (T(1) - Qi) * (T(1) - Qi * Q);
    const T B = Qi * (T(1) - Q) * (T(1) - Q);
    std::vector<T> np(prod.size() + 1, T(0));
    for (size_t d = 0; d < prod.size(); ++d) {
      np[d] = np[d] + prod[d] * A;
      np[d + 1] = np[d + 1] + prod[d] * B;
    }
    prod = std::move(np);
    const T Qk = ctx.q_pow(2 * k);
    scal = scal * (T(1) - qm2j * Qi) * Q / ((T(1) - Qk) * (T(1) - Qk));
    acc.resize(std::max(acc.size(), prod.size()), T(0));
    for (size_t d = 0; d < prod.size(); ++d) acc[d] = acc[d] + scal * prod[d];
  }
  return {j, std::move(acc)};
}

// The terminating series above cancels catastrophically in floating point
// once j grows, exactly like the eigenfunction series it evaluates; this
// second route generates p_0 .. p_{j_max} through the grid difference
// equation (the same recurrence phi_values uses), which follows the dominant
// solution and is stable. Both routes agree exactly over exact scalars.
template <class T>
std::vector<BerezinPoly<T>> p_poly_list(const QContext<T>& ctx, long j_max) {
  if (j_max < 0) fail(errc::validation, "p_poly_list: need j_max >= 0");
  std::vector<BerezinPoly<T>> out;
  out.reserve(static_cast<size_t>(j_max) + 1);
  out.push_back({0, {T(1)}});
  const T qi = ctx.q_pow(-1);
  const T d2 = (qi - ctx.q) * (qi - ctx.q);
  for (long j = 0; j < j_max; ++j) {
    const auto& pj = out.back().coeff;
    const T x = ctx.q_pow(-2 * j);
    const T den = T(1) - ctx.q_pow(-2) * x;
    std::vector<T> num(pj.size() + 1, T(0));
    for (size_t d = 0; d < pj.size(); ++d) num[d + 1] = num[d + 1] + d2 * x * pj[d];
    if (j > 0) {
      const T w = T(1) - x;
      const auto& pm = out[static_cast<size_t>(j - 1)].coeff;
      for (size_t d = 0; d < pj.size(); ++d) num[d] = num[d] + w * pj[d];
      for (size_t d = 0; d < pm.size(); ++d) num[d] = num[d] - w * pm[d];
    }
    std::vector<T> next(num.size(), T(0));
    for (size_t d = 0; d < num.size(); ++d) {
      next[d] = num[d] / den;
      if (d < pj.size()) next[d] = next[d] + pj[d];
    }
    out.push_back({j + 1, std::move(next)});
  }
  return out;
}

// p(L) psi via operator Horner; exact while support + degree stays inside the
// window, so pad finitely supported input by the polynomial degree
template <class T>
RadialFunction<T> berezin_poly_apply(const QContext<T>& ctx, const BerezinPoly<T>& p,
                                     const RadialFunction<T>& psi) {
  RadialFunction<T> r;
  r.values.assign(psi.values.size(), T(0));
  for (size_t d = p.coeff.size(); d-- > 0;) {
    if (d + 1 < p.coeff.size()) r = laplacian_radial_apply(ctx, r);
    for (size_t i = 0; i < r.values.size(); ++i)
      r.values[i] = r.values[i] + p.coeff[d] * psi.values[i];
  }
  return r;
}

namespace detail {

// certified sups of |p_j| over the spectral band [1/(1+q)^2, 1/(1-q)^2] for
// j = 0 .. j_hi. Since p_j(lambda) equals the eigenfunction value at x_j, each
// sample column comes from the stable phi_values recurrence; m > 4 j_hi
// Chebyshev nodes keep the node-gap factor below the applied 1.1.
inline std::vector<double> band_sup_table(const QContext<double>& ctx, long j_hi) {
  const double lo = 1.0 / ((1.0 + ctx.q) * (1.0 + ctx.q));
  const double hi = 1.0 / ((1.0 - ctx.q) * (1.0 - ctx.q));
  const double mid = 0.5 * (lo + hi), rad = 0.5 * (hi - lo);
  const long m = 4 * std::max(j_hi, 1L) + 8;
  std::vector<double> sup(static_cast<size_t>(j_hi) + 1, 0.0);
  for (long i = 0; i < m; ++i) {
    const double lam = mid + rad * std::cos(3.14159265358979323846 * (2 * i + 1) / (2.0 * m));
    const auto col = phi_values(ctx, lam, j_hi + 1);
    for (size_t j = 0; j < sup.size(); ++j) sup[j] = std::max(sup[j], std::abs(col[j]));
  }
  for (auto& s : sup) s *= 1.1;
  return sup;
}

}  // namespace detail

// truncated series (1 - t) sum_{j<=J} t^j p_j(L) f on the window of f, with
// p_j(L) f generated by the same difference-equation recurrence as the
// polynomials themselves (one Laplacian application per order). The dropped
// tail is estimated through the self-adjoint calculus: sup of |p_j| over the
// spectral band of L bounds the operator norm, the invariant-measure norm of
// f converts it to a sup-norm bound, and the series is summed geometrically;
// the call refuses truncations whose estimate does not clear ctx.eps.
template <class T>
RadialFunction<T> berezin_radial(const QContext<T>& ctx, const WeightedSpace<T>& sp,
                                 const RadialFunction<T>& f, long j_max) {
  if (j_max < 0) fail(errc::validation, "berezin_radial: need J >= 0");
  const long n = static_cast<long>(f.values.size());
  if (n < 1) fail(errc::validation, "berezin_radial: empty grid");

  const double qd = s_real(ctx.q);
  const double td = s_abs(sp.t);
  double l2 = 0.0;  // ||f||^2 in the invariant-measure norm
  for (long j = 0; j < n; ++j) {
    const double v = s_abs(f.values[static_cast<size_t>(j)]);
    l2 += (1.0 - qd * qd) * v * v * std::pow(qd, -2.0 * j);
  }
  if (l2 > 0.0) {
    const double fnorm = std::sqrt(l2) / std::sqrt(1.0 - qd * qd);
    const long j_hi = j_max + 200;
    const auto sup = detail::band_sup_table(make_context(qd), j_hi);
    double tail = 0.0, prev = -1.0;
    bool settled = false;
    for (long j = j_max + 1; j <= j_hi; ++j) {
      const double term = (1.0 - td) * std::pow(td, static_cast<double>(j)) *
                          sup[static_cast<size_t>(j)] * fnorm;
      tail += term;
      if (prev > 0.0 && term < ctx.eps * 1e-3 && term < 0.9 * prev) {
        tail += term * 9.0;  // geometric remainder at ratio 0.9
        settled = true;
        break;
      }
      prev = term;
    }
    if (!settled || !(tail < ctx.eps))
      fail(errc::nonconvergence,
           "berezin_radial: tail bound not achieved at the requested truncation");
  }

  std::vector<T> prev_img, cur(f.values);
  cur.resize(static_cast<size_t>(n + j_max), T(0));
  std::vector<T> acc = cur;  // j = 0 term, p_0 = 1
  const T qi = ctx.q_pow(-1);
  const T d2 = (qi - ctx.q) * (qi - ctx.q);
  T tj(1);
  RadialFunction<T> work;
  for (long j = 0; j < j_max; ++j) {
    tj = tj * sp.t;
    work.values = cur;
    const RadialFunction<T> lp = laplacian_radial_apply(ctx, work);
    const T x = ctx.q_pow(-2 * j);
    const T den = T(1) - ctx.q_pow(-2) * x;
    const T w = T(1) - x;
    std::vector<T> next(cur.size());
    for (size_t i = 0; i < cur.size(); ++i) {
      T num = d2 * x * lp.values[i];
      if (j > 0) num = num + w * (cur[i] - prev_img[i]);
      next[i] = cur[i] + num / den;
    }
    prev_img = std::move(cur);
    cur = std::move(next);
    for (size_t i = 0; i < acc.size(); ++i) acc[i] = acc[i] + tj * cur[i];
  }
  const T pref = T(1) - sp.t;
  RadialFunction<T> out;
  acc.resize(static_cast<size_t>(n));
  out.values = std::move(acc);
  for (auto& v : out.values) v = pref * v;
  return out;
}

// resolvent-product form of the transform: M factors of (1 + c_r L)^{-1} with
// c_r = q (q - q^{-1})^2 / (u/q + q/u - q - q^{-1}), u = q^{2(lambda + r)},
// each applied by a tridiagonal solve on the stored window
template <class T>
RadialFunction<T> berezin_resolvent_product(const QContext<T>& ctx, const WeightedSpace<T>& sp,
                                            const RadialFunction<T>& f, long m_factors) {
  if (m_factors < 0) fail(errc::validation, "berezin_resolvent_product: need M >= 0");
  const long n = static_cast<long>(f.values.size());
  if (n < 2) fail(errc::validation, "berezin_resolvent_product: need at least two grid points");
  const T d = ctx.q_pow(-1) - ctx.q;
  std::vector<T> low(static_cast<size_t>(n), T(0)), mid(static_cast<size_t>(n), T(0)),
      upp(static_cast<size_t>(n), T(0));
  for (long j = 0; j < n; ++j) {
    const T x = ctx.q_pow(-2 * j);
    const T den = d * d * x;
    const T up = (T(1) - ctx.q_pow(-2) * x) / den;
    const T lo = (T(1) - x) / den;
    upp[static_cast<size_t>(j)] = up;
    low[static_cast<size_t>(j)] = lo;
    mid[static_cast<size_t>(j)] = T(0) - up - lo;
  }
  std::vector<T> y = f.values;
  for (long r = 0; r < m_factors; ++r) {
    const T u = sp.q2l * ctx.q_pow(2 * r);
    const T c = ctx.q * d * d / (u / ctx.q + ctx.q / u - ctx.q - T(1) / ctx.q);
    // Thomas solve of (I + c L) x = y
    std::vector<T> diag(static_cast<size_t>(n)), rhs = y;
    for (long j = 0; j < n; ++j) diag[static_cast<size_t>(j)] = T(1) + c * mid[static_cast<size_t>(j)];
    for (long j = 1; j < n; ++j) {
      const T w = c * low[static_cast<size_t>(j)] / diag[static_cast<size_t>(j - 1)];
      diag[static_cast<size_t>(j)] =
          diag[static_cast<size_t>(j)] - w * c * upp[static_cast<size_t>(j - 1)];
      rhs[static_cast<size_t>(j)] = rhs[static_cast<size_t>(j)] - w * rhs[static_cast<size_t>(j - 1)];
    }
    y[static_cast<size_t>(n - 1)] = rhs[static_cast<size_t>(n - 1)] / diag[static_cast<size_t>(n - 1)];
    for (long j = n - 2; j >= 0; --j)
      y[static_cast<size_t>(j)] = (rhs[static_cast<size_t>(j)] -
                                   c * upp[static_cast<size_t>(j)] * y[static_cast<size_t>(j + 1)]) /
                                  diag[static_cast<size_t>(j)];
  }
  RadialFunction<T> out;
  out.values = std::move(y);
  return out;
}

// ---------------------------------------------------------------------------
// Star product

template <class T>
struct StarSeries {
  long order = 0;
  std::vector<PolElement<T>> coeff;  // coeff[m] multiplies t^m, size order + 1
};

template <class T>
StarSeries<T> star_series(const PolElement<T>& f, long order) {
  if (order < 0) fail(errc::validation, "star_series: need K >= 0");
  StarSeries<T> s;
  s.order = order;
  s.coeff.assign(static_cast<size_t>(order + 1), PolElement<T>::zero());
  s.coeff[0] = f;
  return s;
}

// f *_t g = (1-t) sum_j t^j  z^a . p_j(Laplacian)(z*^b z^c) . z*^d  summed
// over the normally ordered expansions f = sum z^a z*^b, g = sum z^c z*^d;
// the t^m coefficient collects p_m - p_{m-1}
template <class T>
StarSeries<T> star_product(const QContext<T>& ctx, const PolElement<T>& f,
                           const PolElement<T>& g, long order) {
  if (order < 0) fail(errc::validation, "star_product: need K >= 0");
  const auto tf = pol_monomial_table(ctx, f);
  const auto tg = pol_monomial_table(ctx, g);
  const std::vector<BerezinPoly<T>> ps = p_poly_list(ctx, order);

  StarSeries<T> out;
  out.order = order;
  out.coeff.assign(static_cast<size_t>(order + 1), PolElement<T>::zero());
  std::map<std::pair<long, long>, std::vector<PolElement<T>>> mids;
  for (const auto& mf : tf)
    for (const auto& mg : tg) {
      auto [it, fresh] = mids.try_emplace({mf.b, mg.a});
      if (fresh) {
        // powers of the Laplacian on the middle word z*^b z^c
        PolElement<T> midw = PolElement<T>::from_radial(-mf.b, RadialCoeff<T>::constant(T(1)));
        for (long i = 0; i < mg.a; ++i) midw = detail::mul_z(ctx, midw);
        it->second.push_back(midw);
        for (long i = 1; i <= order; ++i)
          it->second.push_back(laplacian_apply(ctx, it->second.back()));
      }
      const auto& boxpow = it->second;
      const T cv = mf.value * mg.value;
      for (long m = 0; m <= order; ++m) {
        PolElement<T> mid;
        for (long dgr = 0; dgr <= m; ++dgr) {
          T cdiff = dgr < static_cast<long>(ps[static_cast<size_t>(m)].coeff.size())
                        ? ps[static_cast<size_t>(m)].coeff[static_cast<size_t>(dgr)]
                        : T(0);
          if (m > 0 && dgr < static_cast<long>(ps[static_cast<size_t>(m - 1)].coeff.size()))
            cdiff = cdiff - ps[static_cast<size_t>(m - 1)].coeff[static_cast<size_t>(dgr)];
          if (s_is_zero(cdiff)) continue;
          mid = mid + boxpow[static_cast<size_t>(dgr)].scaled(cdiff);
        }
        if (mid.is_zero()) continue;
        PolElement<T> term =
            pol_multiply(ctx, PolElement<T>::from_radial(mf.a, RadialCoeff<T>::constant(T(1))), mid);
        for (long i = 0; i < mg.b; ++i) term = detail::mul_zstar(ctx, term);
        out.coeff[static_cast<size_t>(m)] = out.coeff[static_cast<size_t>(m)] + term.scaled(cv);
      }
    }
  return out;
}

// bilinear extension over C[[t]] up to the requested order
template <class T>
StarSeries<T> star_product(const QContext<T>& ctx, const StarSeries<T>& f,
                           const StarSeries<T>& g, long order) {
  if (order < 0) fail(errc::validation, "star_product: need K >= 0");
  StarSeries<T> out;
  out.order = order;
  out.coeff.assign(static_cast<size_t>(order + 1), PolElement<T>::zero());
  for (long i = 0; i <= std::min<long>(order, f.order); ++i)
    for (long j = 0; i + j <= order && j <= g.order; ++j) {
      if (f.coeff[static_cast<size_t>(i)].is_zero() || g.coeff[static_cast<size_t>(j)].is_zero())
        continue;
      StarSeries<T> s = star_product(ctx, f.coeff[static_cast<size_t>(i)],
                                     g.coeff[static_cast<size_t>(j)], order - i - j);
      for (long m = 0; m <= s.order; ++m)
        out.coeff[static_cast<size_t>(i + j + m)] =
            out.coeff[static_cast<size_t>(i + j + m)] + s.coeff[static_cast<size_t>(m)];
    }
  return out;
}

}  // namespace qdha
