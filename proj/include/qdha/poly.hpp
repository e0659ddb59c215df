#pragma once

// Dense univariate polynomial over an arbitrary scalar T. Used for radial
// coefficients in y, eigenvalue polynomials, and truncated series in t.

#include <vector>

#include "scalar.hpp"

namespace qdha {

template <class T>
struct Poly {
  std::vector<T> c;  // c[i] * x^i

  Poly() = default;
  explicit Poly(T c0) : c{std::move(c0)} { trim(); }
  static Poly constant(T v) { return Poly(std::move(v)); }
  static Poly monomial(T coeff, long k) {
    Poly p;
    p.c.assign(static_cast<size_t>(k) + 1, T(0));
    p.c.back() = std::move(coeff);
    p.trim();
    return p;
  }

  void trim() {
    while (!c.empty() && s_is_zero(c.back())) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  long degree() const { return static_cast<long>(c.size()) - 1; }
  T coeff(long k) const {
    return (k >= 0 && k < static_cast<long>(c.size())) ? c[static_cast<size_t>(k)] : T(0);
  }

  T eval(const T& x) const {
    T acc(0);
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c.assign(std::max(a.c.size(), b.c.size()), T(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = r.c[i] + a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly r;
    r.c.assign(std::max(a.c.size(), b.c.size()), T(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = r.c[i] + a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] - b.c[i];
    r.trim();
    return r;
  }
  Poly operator-() const {
    Poly r(*this);
    for (auto& x : r.c) x = T(0) - x;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, T(0));
    for (size_t i = 0; i < a.c.size(); ++i)
      for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    r.trim();
    return r;
  }
  Poly scaled(const T& k) const {
    Poly r(*this);
    for (auto& x : r.c) x = x * k;
    r.trim();
    return r;
  }
  // p(alpha * x)
  Poly compose_scale(const T& alpha) const {
    Poly r(*this);
    T p(1);
    for (auto& x : r.c) {
      x = x * p;
      p = p * alpha;
    }
    r.trim();
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
};

}  // namespace qdha
