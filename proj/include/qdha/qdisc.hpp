#pragma once

// Quantum disc core. Elements of the *-algebra generated by z, z* with
//   z*z = 1 - q^2 y,  zz* = 1 - y,  yz = q^2 zy,  yz* = q^-2 z*y,
// stored in the canonical weight decomposition z^m psi_m(y) (m > 0),
// psi_0(y), psi_m(y) z*^|m| (m < 0), where each radial coefficient is a
// polynomial in y plus a finitely supported correction on the spectral grid
// y in q^{2Z+}. On top of the arithmetic: the Fock representation, the
// quantum-group generator actions with their Casimir/Laplacian, the invariant
// integral, and the radial second-order difference operator.

#include <map>
#include <utility>
#include <vector>

#include "ncgroebner.hpp"
#include "poly.hpp"
#include "scalar.hpp"

namespace qdha {

// ---------------------------------------------------------------------------
// Radial coefficients

// Polynomial part plus grid spikes. The split is canonical: a nonzero
// polynomial cannot vanish at every grid point q^{2k}.
template <class T>
struct RadialCoeff {
  Poly<T> poly;
  std::map<long, T> spikes;  // k -> added value at y = q^{2k}

  RadialCoeff() = default;
  explicit RadialCoeff(Poly<T> p) : poly(std::move(p)) {}

  static RadialCoeff constant(T v) { return RadialCoeff(Poly<T>(std::move(v))); }
  static RadialCoeff spike(long k, T v) {
    RadialCoeff r;
    if (k >= 0 && !s_is_zero(v)) r.spikes.emplace(k, std::move(v));
    return r;
  }

  void normalize() {
    poly.trim();
    for (auto it = spikes.begin(); it != spikes.end();)
      it = s_is_zero(it->second) ? spikes.erase(it) : std::next(it);
  }
  bool is_zero() const { return poly.is_zero() && spikes.empty(); }

  // value at the grid point y = q^{2k}
  T at(const QContext<T>& ctx, long k) const {
    T v = poly.is_zero() ? T(0) : poly.eval(ctx.q_pow(2 * k));
    auto it = spikes.find(k);
    if (it != spikes.end()) v = v + it->second;
    return v;
  }

  // psi(q^{2t} y); spikes move to k - t and fall off the grid for k < t
  RadialCoeff arg_scale(const QContext<T>& ctx, long t) const {
    RadialCoeff r(poly.compose_scale(ctx.q_pow(2 * t)));
    for (const auto& [k, v] : spikes)
      if (k - t >= 0) r.spikes.emplace(k - t, v);
    return r;
  }

  RadialCoeff plus(const RadialCoeff& o) const {
    RadialCoeff r(poly + o.poly);
    r.spikes = spikes;
    for (const auto& [k, v] : o.spikes) {
      auto [it, fresh] = r.spikes.try_emplace(k, v);
      if (!fresh) it->second = it->second + v;
    }
    r.normalize();
    return r;
  }
  RadialCoeff minus(const RadialCoeff& o) const { return plus(o.scaled(T(0) - T(1))); }
  RadialCoeff scaled(const T& s) const {
    RadialCoeff r(poly.scaled(s));
    for (const auto& [k, v] : spikes) r.spikes.emplace(k, v * s);
    r.normalize();
    return r;
  }
  RadialCoeff conjugated() const {
    RadialCoeff r(poly);
    for (auto& x : r.poly.c) x = s_conj(x);
    for (const auto& [k, v] : spikes) r.spikes.emplace(k, s_conj(v));
    return r;
  }

  RadialCoeff times(const QContext<T>& ctx, const RadialCoeff& o) const {
    RadialCoeff r(poly * o.poly);
    auto add = [&r](long k, const T& v) {
      auto [it, fresh] = r.spikes.try_emplace(k, v);
      if (!fresh) it->second = it->second + v;
    };
    for (const auto& [k, v] : o.spikes) add(k, poly.eval(ctx.q_pow(2 * k)) * v);
    for (const auto& [k, v] : spikes) {
      add(k, v * o.poly.eval(ctx.q_pow(2 * k)));
      auto it = o.spikes.find(k);
      if (it != o.spikes.end()) add(k, v * it->second);
    }
    r.normalize();
    return r;
  }

  friend bool operator==(const RadialCoeff& a, const RadialCoeff& b) {
    return a.poly == b.poly && a.spikes == b.spikes;
  }
};

// ---------------------------------------------------------------------------
// Canonical elements

template <class T>
struct PolElement {
  // weight m > 0 stores z^m psi(y); m < 0 stores psi(y) z*^{-m}; m = 0 stores psi(y)
  std::map<long, RadialCoeff<T>> coeffs;

  static PolElement zero() { return PolElement(); }
  static PolElement from_radial(long m, RadialCoeff<T> c) {
    PolElement f;
    c.normalize();
    if (!c.is_zero()) f.coeffs.emplace(m, std::move(c));
    return f;
  }
  static PolElement scalar(T v) { return from_radial(0, RadialCoeff<T>::constant(std::move(v))); }
  static PolElement unit() { return scalar(T(1)); }
  static PolElement z() { return from_radial(1, RadialCoeff<T>::constant(T(1))); }
  static PolElement zstar() { return from_radial(-1, RadialCoeff<T>::constant(T(1))); }
  static PolElement y() { return from_radial(0, RadialCoeff<T>(Poly<T>::monomial(T(1), 1))); }
  // indicator of the grid point y = q^{2j}
  static PolElement f(long j) { return from_radial(0, RadialCoeff<T>::spike(j, T(1))); }

  bool is_zero() const { return coeffs.empty(); }
  RadialCoeff<T> coeff(long m) const {
    auto it = coeffs.find(m);
    return it == coeffs.end() ? RadialCoeff<T>() : it->second;
  }
  void add_to(long m, const RadialCoeff<T>& c) {
    auto [it, fresh] = coeffs.try_emplace(m, c);
    if (!fresh) it->second = it->second.plus(c);
    it->second.normalize();
    if (it->second.is_zero()) coeffs.erase(it);
  }

  PolElement scaled(const T& s) const {
    PolElement r;
    for (const auto& [m, c] : coeffs) {
      RadialCoeff<T> sc = c.scaled(s);
      if (!sc.is_zero()) r.coeffs.emplace(m, std::move(sc));
    }
    return r;
  }
  friend PolElement operator+(const PolElement& a, const PolElement& b) {
    PolElement r = a;
    for (const auto& [m, c] : b.coeffs) r.add_to(m, c);
    return r;
  }
  friend PolElement operator-(const PolElement& a, const PolElement& b) {
    return a + b.scaled(T(0) - T(1));
  }
  friend bool operator==(const PolElement& a, const PolElement& b) {
    return a.coeffs == b.coeffs;
  }
};

namespace detail {

// right multiplication by z:
//   z^m psi(y) . z       = z^{m+1} psi(q^2 y)
//   psi(y) z*^c . z      = psi(y) (1 - q^{2c} y) z*^{c-1}
template <class T>
PolElement<T> mul_z(const QContext<T>& ctx, const PolElement<T>& f) {
  PolElement<T> r;
  for (const auto& [m, psi] : f.coeffs) {
    if (m >= 0) {
      r.add_to(m + 1, psi.arg_scale(ctx, 1));
    } else {
      Poly<T> fac;
      fac.c = {T(1), T(0) - ctx.q_pow(-2 * m)};  // 1 - q^{2c} y, c = -m
      r.add_to(m + 1, psi.times(ctx, RadialCoeff<T>(fac)));
    }
  }
  return r;
}

// right multiplication by z*:
//   z^a psi(y) . z*      = z^{a-1} (1 - y) psi(q^{-2} y)
//   psi(y) z*^c . z*     = psi(y) z*^{c+1}
template <class T>
PolElement<T> mul_zstar(const QContext<T>& ctx, const PolElement<T>& f) {
  PolElement<T> r;
  for (const auto& [m, psi] : f.coeffs) {
    if (m <= 0) {
      r.add_to(m - 1, psi);
    } else {
      Poly<T> fac;
      fac.c = {T(1), T(0) - T(1)};  // 1 - y
      r.add_to(m - 1, psi.arg_scale(ctx, -1).times(ctx, RadialCoeff<T>(fac)));
    }
  }
  return r;
}

// right multiplication by chi(y): z^a psi(y) z*^c . chi(y) = z^a psi(y) chi(q^{2c} y) z*^c
template <class T>
PolElement<T> mul_radial(const QContext<T>& ctx, const PolElement<T>& f,
                         const RadialCoeff<T>& chi) {
  PolElement<T> r;
  for (const auto& [m, psi] : f.coeffs) {
    long c = m < 0 ? -m : 0;
    r.add_to(m, psi.times(ctx, chi.arg_scale(ctx, c)));
  }
  return r;
}

}  // namespace detail

template <class T>
PolElement<T> pol_multiply(const QContext<T>& ctx, const PolElement<T>& f,
                           const PolElement<T>& g) {
  PolElement<T> acc;
  for (const auto& [m, psi] : g.coeffs) {
    PolElement<T> t = f;
    for (long i = 0; i < m; ++i) t = detail::mul_z(ctx, t);
    t = detail::mul_radial(ctx, t, psi);
    for (long i = 0; i < -m; ++i) t = detail::mul_zstar(ctx, t);
    acc = acc + t;
  }
  return acc;
}

// adjoint: (z^m psi(y))* = conj(psi)(y) z*^m, an antihomomorphism fixing y
template <class T>
PolElement<T> pol_star(const PolElement<T>& f) {
  PolElement<T> r;
  for (const auto& [m, psi] : f.coeffs) r.add_to(-m, psi.conjugated());
  return r;
}

// finite <=> every radial coefficient is pure spikes (z*^N f = f z^N = 0)
template <class T>
bool pol_is_finite(const PolElement<T>& f) {
  for (const auto& [m, psi] : f.coeffs)
    if (!psi.poly.is_zero()) return false;
  return true;
}

// (1 - q^2) sum_k psi_0(q^{2k}) q^{-2k}, defined on finite elements only
template <class T>
T invariant_integral(const QContext<T>& ctx, const PolElement<T>& f) {
  if (!pol_is_finite(f))
    fail(errc::validation, "invariant_integral: element is not finitely supported");
  T sum(0);
  auto it = f.coeffs.find(0);
  if (it != f.coeffs.end())
    for (const auto& [k, v] : it->second.spikes) sum = sum + v * ctx.q_pow(-2 * k);
  return (T(1) - ctx.q_pow(2)) * sum;
}

// ---------------------------------------------------------------------------
// Generator actions

enum class Gen { K, Kinv, E, F };

namespace detail {

// one canonical component z^a psi(y) z*^c as an element (min(a, c) = 0)
template <class T>
PolElement<T> component_element(long a, RadialCoeff<T> psi, long c) {
  return PolElement<T>::from_radial(a - c, std::move(psi));
}

// Leibniz expansion over the atom factorization z^a psi(y) z*^c:
//   E(uv) = E(u)v + K(u)E(v)        -> K over the prefix folds to q^{2 wt}
//   F(uv) = F(u)K^{-1}(v) + uF(v)   -> K^{-1} over the tail folds to q^{-2 wt}
// with the atom values
//   E(z) = -q^{1/2} z^2   E(z*) = q^{-3/2}        E(psi) = -(q^{1/2}/(1-q^2)) z (psi - psi(q^2 .))
//   F(z) = q^{1/2}        F(z*) = -q^{5/2} z*^2   F(psi) = -(q^{5/2}/(1-q^2)) (psi - psi(q^2 .)) z*
template <class T>
PolElement<T> act_component(const QContext<T>& ctx, Gen g, long a,
                            const RadialCoeff<T>& psi, long c) {
  using El = PolElement<T>;
  const RadialCoeff<T> one = RadialCoeff<T>::constant(T(1));
  const RadialCoeff<T> diff = psi.minus(psi.arg_scale(ctx, 1));
  const T inv = T(1) / (T(1) - ctx.q_pow(2));
  auto mul3 = [&ctx](const El& x, const El& y, const El& w) {
    return pol_multiply(ctx, pol_multiply(ctx, x, y), w);
  };

  El out;
  if (g == Gen::E) {
    El ez = El::from_radial(2, one).scaled(T(0) - ctx.q_half_pow(1));
    El ezs = El::unit().scaled(ctx.q_half_pow(-3));
    El epsi = El::from_radial(1, diff).scaled((T(0) - ctx.q_half_pow(1)) * inv);
    for (long i = 0; i < a; ++i)
      out = out + mul3(El::from_radial(i, one), ez, component_element(a - 1 - i, psi, c))
                      .scaled(ctx.q_pow(2 * i));
    out = out + mul3(El::from_radial(a, one), epsi, El::from_radial(-c, one))
                    .scaled(ctx.q_pow(2 * a));
    for (long j = 0; j < c; ++j)
      out = out + mul3(component_element(a, psi, j), ezs, El::from_radial(-(c - 1 - j), one))
                      .scaled(ctx.q_pow(2 * (a - j)));
  } else {  // Gen::F
    El fz = El::unit().scaled(ctx.q_half_pow(1));
    El fzs = El::from_radial(-2, one).scaled(T(0) - ctx.q_half_pow(5));
    El fpsi = El::from_radial(-1, diff).scaled((T(0) - ctx.q_half_pow(5)) * inv);
    for (long i = 0; i < a; ++i)
      out = out + mul3(El::from_radial(i, one), fz, component_element(a - 1 - i, psi, c))
                      .scaled(ctx.q_pow(-2 * ((a - 1 - i) - c)));
    out = out + mul3(El::from_radial(a, one), fpsi, El::from_radial(-c, one))
                    .scaled(ctx.q_pow(2 * c));
    for (long j = 0; j < c; ++j)
      out = out + mul3(component_element(a, psi, j), fzs, El::from_radial(-(c - 1 - j), one))
                      .scaled(ctx.q_pow(2 * (c - 1 - j)));
  }
  return out;
}

}  // namespace detail

template <class T>
PolElement<T> act_generator(const QContext<T>& ctx, Gen g, const PolElement<T>& f) {
  PolElement<T> out;
  if (g == Gen::K || g == Gen::Kinv) {
    for (const auto& [m, psi] : f.coeffs)
      out.add_to(m, psi.scaled(ctx.q_pow((g == Gen::K ? 2 : -2) * m)));
    return out;
  }
  for (const auto& [m, psi] : f.coeffs) {
    long a = m > 0 ? m : 0;
    long c = m < 0 ? -m : 0;
    out = out + detail::act_component(ctx, g, a, psi, c);
  }
  return out;
}

// C_q = EF + (q^{-1}K + qK^{-1} - (q^{-1} + q)) / (q^{-1} - q)^2
template <class T>
PolElement<T> casimir_apply(const QContext<T>& ctx, const PolElement<T>& f) {
  const T qi = T(1) / ctx.q;
  const T d = qi - ctx.q;
  PolElement<T> ef = act_generator(ctx, Gen::E, act_generator(ctx, Gen::F, f));
  PolElement<T> kpart = act_generator(ctx, Gen::K, f).scaled(qi) +
                        act_generator(ctx, Gen::Kinv, f).scaled(ctx.q) -
                        f.scaled(qi + ctx.q);
  return ef + kpart.scaled(T(1) / (d * d));
}

template <class T>
PolElement<T> laplacian_apply(const QContext<T>& ctx, const PolElement<T>& f) {
  return casimir_apply(ctx, f).scaled(T(0) - T(1) / ctx.q);
}

// ---------------------------------------------------------------------------
// Fock representation

template <class T>
struct FockMatrix {
  long n = 0;
  std::vector<T> e;  // row-major n x n

  explicit FockMatrix(long n_ = 0) : n(n_), e(static_cast<size_t>(n_ * n_), T(0)) {}
  T& at(long i, long j) { return e[static_cast<size_t>(i * n + j)]; }
  const T& at(long i, long j) const { return e[static_cast<size_t>(i * n + j)]; }

  friend FockMatrix operator*(const FockMatrix& a, const FockMatrix& b) {
    if (a.n != b.n) fail(errc::validation, "FockMatrix: dimension mismatch");
    FockMatrix r(a.n);
    for (long i = 0; i < a.n; ++i)
      for (long k = 0; k < a.n; ++k) {
        if (s_is_zero(a.at(i, k))) continue;
        for (long j = 0; j < a.n; ++j) r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
      }
    return r;
  }
  friend FockMatrix operator+(const FockMatrix& a, const FockMatrix& b) {
    if (a.n != b.n) fail(errc::validation, "FockMatrix: dimension mismatch");
    FockMatrix r(a.n);
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
  }
  friend bool operator==(const FockMatrix& a, const FockMatrix& b) {
    return a.n == b.n && a.e == b.e;
  }
};

// Orthonormal-basis truncation: z e_n = sqrt(1 - q^{2(n+1)}) e_{n+1},
// z* e_n = sqrt(1 - q^{2n}) e_{n-1}, psi(y) e_n = psi(q^{2n}) e_n.
template <class T>
FockMatrix<T> fock_matrix(const QContext<T>& ctx, const PolElement<T>& f, long n) {
  static_assert(!is_exact_v<T>,
                "orthonormal Fock matrix needs square roots; use fock_matrix_monomial");
  if (n < 1) fail(errc::validation, "fock_matrix: need N >= 1");
  using std::sqrt;
  FockMatrix<T> r(n);
  for (const auto& [m, psi] : f.coeffs) {
    long a = m > 0 ? m : 0;
    long c = m < 0 ? -m : 0;
    for (long j = c; j < n; ++j) {
      long i = j - c + a;
      if (i >= n) continue;
      T fac(1);
      for (long t = 0; t < c; ++t) fac = fac * sqrt(T(1) - ctx.q_pow(2 * (j - t)));
      fac = fac * psi.at(ctx, j - c);
      for (long t = 1; t <= a; ++t) fac = fac * sqrt(T(1) - ctx.q_pow(2 * (j - c + t)));
      r.at(i, j) = r.at(i, j) + fac;
    }
  }
  return r;
}

// Monomial-basis truncation (exact in any scalar): z v_n = v_{n+1},
// z* v_n = (1 - q^{2n}) v_{n-1}, psi(y) v_n = psi(q^{2n}) v_n.
template <class T>
FockMatrix<T> fock_matrix_monomial(const QContext<T>& ctx, const PolElement<T>& f, long n) {
  if (n < 1) fail(errc::validation, "fock_matrix: need N >= 1");
  FockMatrix<T> r(n);
  for (const auto& [m, psi] : f.coeffs) {
    long a = m > 0 ? m : 0;
    long c = m < 0 ? -m : 0;
    for (long j = c; j < n; ++j) {
      long i = j - c + a;
      if (i >= n) continue;
      T fac(1);
      for (long t = 0; t < c; ++t) fac = fac * (T(1) - ctx.q_pow(2 * (j - t)));
      fac = fac * psi.at(ctx, j - c);
      r.at(i, j) = r.at(i, j) + fac;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Radial functions and the radial Laplacian

template <class T>
struct RadialFunction {
  std::vector<T> values;  // values[j] at x_j = q^{-2j}
};

// weight-0 part sampled on the first n grid points (x = y^{-1})
template <class T>
RadialFunction<T> radial_part(const QContext<T>& ctx, const PolElement<T>& f, long n) {
  if (n < 1) fail(errc::validation, "radial_part: need N >= 1");
  RadialFunction<T> r;
  r.values.assign(static_cast<size_t>(n), T(0));
  auto it = f.coeffs.find(0);
  if (it != f.coeffs.end())
    for (long j = 0; j < n; ++j) r.values[static_cast<size_t>(j)] = it->second.at(ctx, j);
  return r;
}

// finitely supported weight-0 element with the given grid values
template <class T>
PolElement<T> radial_element(const RadialFunction<T>& psi) {
  RadialCoeff<T> c;
  for (size_t j = 0; j < psi.values.size(); ++j)
    if (!s_is_zero(psi.values[j])) c.spikes.emplace(static_cast<long>(j), psi.values[j]);
  return PolElement<T>::from_radial(0, std::move(c));
}

template <class T>
struct Tridiagonal {
  std::vector<T> diag;  // a_0 .. a_{n-1}
  std::vector<T> off;   // b_0 .. b_{n-2}, coupling j <-> j+1
};

// symmetric tridiagonal form of the radial Laplacian in the orthonormal basis:
//   a_j = (1 + q^2 - 2 q^{2(j+1)}) / (1 - q^2)^2
//   b_j = -q (1 - q^{2(j+1)}) / (1 - q^2)^2
template <class T>
Tridiagonal<T> laplacian_radial_matrix(const QContext<T>& ctx, long n) {
  if (n < 2) fail(errc::validation, "laplacian_radial_matrix: need N >= 2");
  const T den = (T(1) - ctx.q_pow(2)) * (T(1) - ctx.q_pow(2));
  Tridiagonal<T> r;
  r.diag.reserve(static_cast<size_t>(n));
  r.off.reserve(static_cast<size_t>(n - 1));
  for (long j = 0; j < n; ++j)
    r.diag.push_back((T(1) + ctx.q_pow(2) - ctx.from_long(2) * ctx.q_pow(2 * (j + 1))) / den);
  for (long j = 0; j + 1 < n; ++j)
    r.off.push_back((T(0) - ctx.q) * (T(1) - ctx.q_pow(2 * (j + 1))) / den);
  return r;
}

// L psi(x) = [(1 - q^{-2}x)(psi(q^{-2}x) - psi(x)) - (1 - x)(psi(x) - psi(q^2 x))]
//            / ((q^{-1} - q)^2 x)
// Values beyond the stored window count as zero, so the result is exact for
// finitely supported input; for restrictions of non-finite functions the last
// slot is inexact (missing right neighbor). At j = 0 the (1 - x) factor
// vanishes, so no left neighbor is needed.
template <class T>
RadialFunction<T> laplacian_radial_apply(const QContext<T>& ctx, const RadialFunction<T>& psi) {
  const long n = static_cast<long>(psi.values.size());
  if (n < 2) fail(errc::validation, "laplacian_radial_apply: need N >= 2");
  const T d = ctx.q_pow(-1) - ctx.q;
  RadialFunction<T> r;
  r.values.assign(static_cast<size_t>(n), T(0));
  auto val = [&psi, n](long j) {
    return (j >= 0 && j < n) ? psi.values[static_cast<size_t>(j)] : T(0);
  };
  for (long j = 0; j < n; ++j) {
    const T x = ctx.q_pow(-2 * j);
    T acc = (T(1) - ctx.q_pow(-2) * x) * (val(j + 1) - val(j));
    if (j > 0) acc = acc - (T(1) - x) * (val(j) - val(j - 1));
    r.values[static_cast<size_t>(j)] = acc / (d * d * x);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Words in z, z* <-> canonical elements

// fold a word expression over the two-letter disc alphabet into canonical form
template <class T>
PolElement<T> pol_normal_form(const QContext<T>& ctx, const Alphabet& alph,
                              const NCPoly<T>& expr) {
  const long zi = alph.index_of("z");
  const long si = alph.index_of("z*");
  if (alph.size() != 2 || zi < 0 || si < 0)
    fail(errc::validation, "pol_normal_form: expected the two-letter alphabet {z, z*}");
  PolElement<T> out;
  for (const auto& [word, coeff] : expr.terms) {
    PolElement<T> w = PolElement<T>::unit();
    for (unsigned char letter : word)
      w = letter == static_cast<unsigned char>(zi) ? detail::mul_z(ctx, w)
                                                   : detail::mul_zstar(ctx, w);
    out = out + w.scaled(coeff);
  }
  return out;
}

// expand the polynomial part back into words via y = 1 - zz*; grid spikes
// have no word expansion
template <class T>
NCPoly<T> pol_expand(const QContext<T>& ctx, const Alphabet& alph, const PolElement<T>& f) {
  const long zi = alph.index_of("z");
  const long si = alph.index_of("z*");
  if (alph.size() != 2 || zi < 0 || si < 0)
    fail(errc::validation, "pol_expand: expected the two-letter alphabet {z, z*}");
  for (const auto& [m, psi] : f.coeffs)
    if (!psi.spikes.empty())
      fail(errc::validation, "pol_expand: finite corrections have no word expansion");
  (void)ctx;
  NCPoly<T> yw = NCPoly<T>::constant(T(1));
  yw = yw - NCPoly<T>::monomial(Word{static_cast<unsigned char>(zi),
                                     static_cast<unsigned char>(si)},
                                T(1));
  NCPoly<T> out;
  for (const auto& [m, psi] : f.coeffs) {
    Word pre, post;
    for (long i = 0; i < m; ++i) pre.push_back(static_cast<unsigned char>(zi));
    for (long i = 0; i < -m; ++i) post.push_back(static_cast<unsigned char>(si));
    NCPoly<T> ypow = NCPoly<T>::constant(T(1));
    for (long k = 0; k <= psi.poly.degree(); ++k) {
      T ck = psi.poly.coeff(k);
      if (!s_is_zero(ck))
        out = out + NCPoly<T>::monomial(pre, ck) * ypow * NCPoly<T>::monomial(post, T(1));
      ypow = ypow * yw;
    }
  }
  return out;
}

}  // namespace qdha
