#pragma once

// Radial spectral theory of the invariant Laplacian: eigenfunctions on the
// grid x_j = q^{-2j}, their eigenvalues, the c-function and the Plancherel
// density, the radial Fourier transform with its quadrature inverse, the
// Green potential of f_0, and the intertwiner eigenvalues a(l, n).

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qdisc.hpp"
#include "qseries.hpp"
#include "scalar.hpp"

namespace qdha {

// Half-period of lambda along the imaginary-l axis; the principal series is
// parametrized by l = -1/2 + i rho with rho in [0, spectral_rho_max].
inline double spectral_rho_max(const QContext<double>& ctx) {
  return std::numbers::pi / (2.0 * std::log(1.0 / ctx.q));
}

// Spectral parameter restricted to the strip |Im l| <= pi / (2 log(1/q)).
struct SpectralParam {
  std::complex<double> l;
};

inline SpectralParam spectral_from_l(const QContext<double>& ctx, std::complex<double> l) {
  if (std::abs(l.imag()) > spectral_rho_max(ctx) + 1e-9)
    fail(errc::validation, "spectral_from_l: Im l outside the principal strip");
  return SpectralParam{l};
}

inline SpectralParam spectral_from_rho(const QContext<double>& ctx, double rho) {
  if (rho < -1e-9 || rho > spectral_rho_max(ctx) + 1e-9)
    fail(errc::validation, "spectral_from_rho: rho outside the spectral interval");
  return SpectralParam{std::complex<double>(-0.5, rho)};
}

// lambda(l) = (1 - q^{-2l})(1 - q^{2(l+1)}) / (1 - q^2)^2 at integer l,
// exact in exact scalars; symmetric under l -> -1-l.
template <class T>
T lambda_l_int(const QContext<T>& ctx, long l) {
  const T d = T(1) - ctx.q_pow(2);
  return (T(1) - ctx.q_pow(-2 * l)) * (T(1) - ctx.q_pow(2 * (l + 1))) / (d * d);
}

inline std::complex<double> lambda_of(const QContext<double>& ctx, std::complex<double> l) {
  const double lnq = std::log(ctx.q);
  auto qp = [lnq](std::complex<double> e) { return std::exp(e * lnq); };
  const double d = 1.0 - ctx.q * ctx.q;
  return (1.0 - qp(-2.0 * l)) * (1.0 - qp(2.0 * (l + 1.0))) / (d * d);
}

// lambda(-1/2 + i rho) in its manifestly real form.
inline double lambda_rho(const QContext<double>& ctx, double rho) {
  const double d = 1.0 - ctx.q * ctx.q;
  return (1.0 - 2.0 * ctx.q * std::cos(2.0 * std::log(1.0 / ctx.q) * rho) + ctx.q * ctx.q) /
         (d * d);
}

// First n grid values of the lambda-eigenfunction of the radial Laplacian
// normalized to 1 at x_0 = 1. The difference equation is second order, but
// the (1 - x) coefficient vanishes at x_0, so psi_1 is determined by psi_0
// and the eigenspace is one dimensional. Generating values this way is exact
// for exact scalars and numerically stable where the terminating series form
// cancels catastrophically.
template <class T>
std::vector<T> phi_values(const QContext<T>& ctx, const T& lambda, long n) {
  if (n < 1) fail(errc::validation, "phi_values: need at least one grid point");
  std::vector<T> psi;
  psi.reserve(static_cast<size_t>(n));
  psi.push_back(T(1));
  const T qi = ctx.q_pow(-1);
  const T d2 = (qi - ctx.q) * (qi - ctx.q);
  for (long j = 0; j + 1 < n; ++j) {
    const T x = ctx.q_pow(-2 * j);
    T num = lambda * d2 * x * psi.back();
    if (j > 0) num = num + (T(1) - x) * (psi[static_cast<size_t>(j)] - psi[static_cast<size_t>(j - 1)]);
    psi.push_back(psi.back() + num / (T(1) - ctx.q_pow(-2) * x));
  }
  return psi;
}

// Phi_l(x_j) at integer l, exact in exact scalars.
template <class T>
T phi_l_int(const QContext<T>& ctx, long l, long j) {
  if (j < 0) fail(errc::validation, "phi_l_int: grid index must be nonnegative");
  return phi_values(ctx, lambda_l_int(ctx, l), j + 1).back();
}

inline QContext<std::complex<double>> complex_context(const QContext<double>& ctx) {
  return QContext<std::complex<double>>(std::complex<double>(ctx.q), ctx.eps, ctx.max_terms);
}

inline std::complex<double> phi_l(const QContext<double>& ctx, SpectralParam p, long j) {
  if (j < 0) fail(errc::validation, "phi_l: grid index must be nonnegative");
  auto c = complex_context(ctx);
  return phi_values(c, std::complex<double>(lambda_of(ctx, p.l)), j + 1).back();
}

// c(l) = Gamma_{q^2}(2l+1) / Gamma_{q^2}(l+1)^2.
inline std::complex<double> c_function(const QContext<double>& ctx, std::complex<double> l) {
  auto at_pole = [](std::complex<double> x) {
    const double r = std::round(x.real());
    return std::abs(x.imag()) < 1e-12 && std::abs(x.real() - r) < 1e-12 && r <= 0.0;
  };
  if (at_pole(2.0 * l + 1.0) || at_pole(l + 1.0))
    fail(errc::validation, "c_function: q-gamma pole");
  auto c2 = complex_context(ctx).with_q_squared();
  const std::complex<double> den = q_gamma(c2, l + 1.0);
  return q_gamma(c2, 2.0 * l + 1.0) / (den * den);
}

// Plancherel density on [0, spectral_rho_max]:
//   (1/pi) (log(1/q)/(q^{-2}-1)) / (c(-1/2+i rho) c(-1/2-i rho)).
// The prefactor is pinned by unitarity of the grid transform: the measure is
// the pushforward of the orthonormality measure of the Al-Salam-Chihara
// polynomials attached to the Jacobi matrix of the radial Laplacian, and its
// total mass must equal q^2/(1-q^2). Computed through the reciprocal
// infinite products of the gamma quotient, which stay finite at rho = 0
// where c itself has a pole.
inline double sigma_density(const QContext<double>& ctx, double rho) {
  using C = std::complex<double>;
  auto c2 = complex_context(ctx).with_q_squared();
  const double lnq = std::log(ctx.q);
  auto qp = [lnq](C e) { return std::exp(e * lnq); };
  const C l(-0.5, rho);
  // 1/c(l) = (q^2; q^2)_inf (q^{2(2l+1)}; q^2)_inf / (q^{2(l+1)}; q^2)_inf^2
  const C a = q_pochhammer_inf(c2, qp(2.0 * (l + 1.0)));
  const C inv_c = q_pochhammer_inf(c2, c2.q) * q_pochhammer_inf(c2, qp(2.0 * (2.0 * l + 1.0))) / (a * a);
  const double kappa = std::log(1.0 / ctx.q) / ((ctx.q_pow(-2) - 1.0) * std::numbers::pi);
  return kappa * std::norm(inv_c);
}

// Forward radial Fourier transform of a finitely supported grid function:
//   (Uf)(rho) = (q^{-2} - 1) sum_j f(x_j) Phi_{-1/2+i rho}(x_j) q^{-2j}.
// Real valued since Phi on the principal series is real on the grid.
inline double fourier_radial_forward(const QContext<double>& ctx,
                                     const RadialFunction<double>& psi, double rho) {
  const long n = static_cast<long>(psi.values.size());
  if (n < 1) fail(errc::validation, "fourier_radial_forward: empty grid window");
  const auto phi = phi_values(ctx, lambda_rho(ctx, rho), n);
  double sum = 0.0;
  for (long j = 0; j < n; ++j)
    sum += psi.values[static_cast<size_t>(j)] * phi[static_cast<size_t>(j)] * ctx.q_pow(-2 * j);
  return (ctx.q_pow(-2) - 1.0) * sum;
}

namespace detail {

// Panel-doubling composite Simpson rule for vector-valued integrands on
// [0, b], refined until successive estimates agree within tol in sup norm.
template <class F>
std::vector<double> simpson_vector(F&& f, double b, long dim, double tol) {
  auto run = [&](long panels) {
    const double h = b / static_cast<double>(panels);
    std::vector<double> acc = f(0.0);
    const std::vector<double> last = f(b);
    for (long d = 0; d < dim; ++d) acc[static_cast<size_t>(d)] += last[static_cast<size_t>(d)];
    for (long i = 1; i < panels; ++i) {
      const std::vector<double> row = f(h * static_cast<double>(i));
      const double w = (i % 2) ? 4.0 : 2.0;
      for (long d = 0; d < dim; ++d) acc[static_cast<size_t>(d)] += w * row[static_cast<size_t>(d)];
    }
    for (long d = 0; d < dim; ++d) acc[static_cast<size_t>(d)] *= h / 3.0;
    return acc;
  };
  std::vector<double> prev = run(16);
  for (long panels = 32; panels <= (1L << 20); panels *= 2) {
    std::vector<double> cur = run(panels);
    double diff = 0.0;
    for (long d = 0; d < dim; ++d)
      diff = std::max(diff, std::abs(cur[static_cast<size_t>(d)] - prev[static_cast<size_t>(d)]));
    if (diff < tol) return cur;
    prev = std::move(cur);
  }
  fail(errc::nonconvergence, "fourier_radial_inverse: quadrature did not converge");
}

}  // namespace detail

// Inverse transform by Plancherel quadrature: the first n grid values of
//   f(x_j) = int_0^{rho_max} fhat(rho) Phi_{-1/2+i rho}(x_j) dsigma(rho).
template <class FHat>
RadialFunction<double> fourier_radial_inverse(const QContext<double>& ctx, FHat&& fhat, long n) {
  if (n < 1) fail(errc::validation, "fourier_radial_inverse: need at least one grid point");
  auto integrand = [&](double rho) {
    const auto phi = phi_values(ctx, lambda_rho(ctx, rho), n);
    const double w = fhat(rho) * sigma_density(ctx, rho);
    std::vector<double> row(static_cast<size_t>(n));
    for (long j = 0; j < n; ++j) row[static_cast<size_t>(j)] = w * phi[static_cast<size_t>(j)];
    return row;
  };
  RadialFunction<double> out;
  out.values = detail::simpson_vector(integrand, spectral_rho_max(ctx), n, ctx.eps / 10.0);
  return out;
}

// Partial sum of the radial Green potential of f_0:
//   psi_M(x) = (1 - q^2) sum_{m=1}^{M} ((q^{-2} - 1)/(q^{-2m} - 1)) x^{-m},
// sampled on the first n grid points. Applying the radial Laplacian
// reproduces f_0 up to the O(q^{2M}) truncation tail.
inline RadialFunction<double> green_f0(const QContext<double>& ctx, long m_terms, long n) {
  if (m_terms < 1) fail(errc::validation, "green_f0: need at least one series term");
  if (n < 1) fail(errc::validation, "green_f0: need at least one grid point");
  RadialFunction<double> out;
  out.values.assign(static_cast<size_t>(n), 0.0);
  for (long j = 0; j < n; ++j) {
    const double xinv = ctx.q_pow(2 * j);
    double p = 1.0, sum = 0.0;
    for (long m = 1; m <= m_terms; ++m) {
      p *= xinv;
      sum += (ctx.q_pow(-2) - 1.0) / (ctx.q_pow(-2 * m) - 1.0) * p;
    }
    out.values[static_cast<size_t>(j)] = (1.0 - ctx.q * ctx.q) * sum;
  }
  return out;
}

// Intertwiner eigenvalue a(l, n) with ql = q^l supplied in the scalar field,
// so rational l stays exact whenever ql does:
//   a(l, n) = q^{-(2l+1)n} * prod_j num_j / den_j
// with the finite products running over j = 0..|n|-1.
template <class T>
T intertwining_a_ql(const QContext<T>& ctx, const T& ql, long n) {
  const T qli = T(1) / ql;
  T acc = s_pow(ql, -2 * n) * ctx.q_pow(-n);
  if (n >= 0) {
    for (long j = 0; j < n; ++j) {
      const T num = ctx.q_pow(-(n - j - 1)) * ql - ctx.q_pow(n - j - 1) * qli;
      const T den = ctx.q_pow(-(n - j)) * qli - ctx.q_pow(n - j) * ql;
      if (s_is_zero(den)) fail(errc::validation, "intertwining_a: pole in the product");
      acc = acc * num / den;
    }
  } else {
    for (long j = 0; j < -n; ++j) {
      const T num = ctx.q_pow(-(n + j + 1)) * qli - ctx.q_pow(n + j + 1) * ql;
      const T den = ctx.q_pow(-(n + j)) * ql - ctx.q_pow(n + j) * qli;
      if (s_is_zero(den)) fail(errc::validation, "intertwining_a: pole in the product");
      acc = acc * num / den;
    }
  }
  return acc;
}

inline std::complex<double> intertwining_a(const QContext<double>& ctx, std::complex<double> l,
                                           long n) {
  const double r = std::round(l.real());
  if (std::abs(l.imag()) < 1e-12 && std::abs(l.real() - r) < 1e-12 && r <= -1.0)
    fail(errc::validation, "intertwining_a: pole in the product");
  auto c = complex_context(ctx);
  return intertwining_a_ql(c, std::exp(l * std::log(std::complex<double>(ctx.q))), n);
}

}  // namespace qdha
