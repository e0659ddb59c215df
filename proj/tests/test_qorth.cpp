#include "helpers.hpp"

using namespace qdha;
using C = std::complex<double>;

namespace {

const QContext<Rational> rctx = make_context(Rational(1, 2));
const QContext<double> fctx = make_context(0.5);
const QContext<C> cctx{C(0.5, 0.0)};

// weight quotient of h-products without the [-1,1] restriction; needed to
// probe the difference equation on the Laurent ray t > 1
double weight_free(const QContext<double>& ctx, const std::vector<double>& ps, double x) {
  double sq = std::sqrt(ctx.q);
  double num = trig_h(ctx, x, 1.0) * trig_h(ctx, x, -1.0) * trig_h(ctx, x, sq) *
               trig_h(ctx, x, -sq);
  double den = 1.0;
  for (double a : ps) den *= trig_h(ctx, x, a);
  return num / den;
}

// residual of the Sturm-Liouville form D_q[wt1 D_q y] + lambda_n wt y for
// y = p_n, where D_q is the divided difference against x(u) = (u + 1/u)/2,
//   D_q f(u) = (f(q^{1/2} u) - f(q^{-1/2} u)) / ((q^{1/2} - q^{-1/2})(u - 1/u)/2),
// wt carries the single-valued substitute 2u/(u^2 - 1) for (1-x^2)^{-1/2}
// (consistent branch for all arguments on u > 1), and wt1 has every parameter
// multiplied by q^{1/2}.
double sl_residual_scaled(const QContext<double>& ctx, const FamilySpec<double>& spec,
                          long n, double t) {
  const double q = ctx.q, sq = std::sqrt(q);
  auto x = [](double u) { return 0.5 * (u + 1.0 / u); };
  auto y = [&](double u) { return orth_eval(ctx, spec, n, x(u)); };
  auto g1 = [](double u) { return 2.0 * u / (u * u - 1.0); };
  std::vector<double> shifted;
  for (double p : spec.params) shifted.push_back(p * sq);
  auto wt = [&](double u) { return weight_free(ctx, spec.params, x(u)) * g1(u); };
  auto wt1 = [&](double u) { return weight_free(ctx, shifted, x(u)) * g1(u); };

  double lam = 4.0 * std::pow(q, -double(n) + 1.0) * (1.0 - std::pow(q, double(n))) /
               ((1.0 - q) * (1.0 - q));
  if (spec.params.size() == 4) {
    double abcd = spec.params[0] * spec.params[1] * spec.params[2] * spec.params[3];
    lam *= 1.0 - abcd * std::pow(q, double(n - 1));
  }

  auto dq = [&](auto&& F, double u) {
    return (F(sq * u) - F(u / sq)) / ((sq - 1.0 / sq) * (u - 1.0 / u) * 0.5);
  };
  auto inner = [&](double u) { return wt1(u) * dq(y, u); };
  double zero_term = lam * wt(t) * y(t);
  double R = dq(inner, t) + zero_term;
  return std::abs(R) / std::max(std::abs(zero_term), 1e-30);
}

std::vector<Rational> cheb_values(const Rational& x, long top) {
  std::vector<Rational> T(top + 1);
  T[0] = 1;
  if (top >= 1) T[1] = x;
  for (long m = 2; m <= top; ++m) T[m] = Rational(2) * x * T[m - 1] - T[m - 2];
  return T;
}

}  // namespace

TEST_CASE("closed-form values of low-degree polynomials") {
  auto asc = make_family(fctx, Family::al_salam_chihara, {0.3, 0.5});
  REQUIRE(orth_eval(fctx, asc, 0, 0.37) == 1.0);
  REQUIRE(qt::rel_err(orth_eval(fctx, asc, 1, 0.37), 2.0 * 0.37 - 0.8) < 1e-14);

  Rational a(1, 3), b(1, 5), x(3, 7);
  auto lqj = make_family(rctx, Family::little_q_jacobi, {a, b});
  Rational q = rctx.q;
  Rational expect = Rational(1) - (Rational(1) - a * b * q * q) / (Rational(1) - a * q) * x;
  REQUIRE(orth_eval(rctx, lqj, 1, x) == expect);

  // at the grid point q^{-0} = 1 every q-Hahn polynomial equals 1
  auto qh = make_family(rctx, Family::q_hahn, {q, q}, 5);
  for (long n = 0; n <= 5; ++n) {
    REQUIRE(orth_eval(rctx, qh, n, Rational(1)) == Rational(1));
    REQUIRE(orth_eval(rctx, qh, n, Rational(1), OrthMode::recurrence) == Rational(1));
  }
}

TEST_CASE("explicit series and three-term recurrence agree exactly") {
  Rational x(3, 7);

  auto aw = make_family(rctx, Family::askey_wilson,
                        {Rational(1, 2), Rational(1, 3), Rational(1, 5), Rational(1, 7)});
  auto cdh = make_family(rctx, Family::cont_dual_q_hahn,
                         {Rational(1, 2), Rational(1, 3), Rational(1, 5)});
  auto asc = make_family(rctx, Family::al_salam_chihara, {Rational(1, 3), Rational(1, 5)});
  auto lqj = make_family(rctx, Family::little_q_jacobi, {Rational(1, 3), Rational(1, 5)});
  for (long n = 0; n <= 10; ++n) {
    REQUIRE(orth_eval(rctx, aw, n, x) == orth_eval(rctx, aw, n, x, OrthMode::recurrence));
    REQUIRE(orth_eval(rctx, cdh, n, x) ==
            orth_eval(rctx, cdh, n, x, OrthMode::recurrence));
    REQUIRE(orth_eval(rctx, asc, n, x) ==
            orth_eval(rctx, asc, n, x, OrthMode::recurrence));
    REQUIRE(orth_eval(rctx, lqj, n, x) ==
            orth_eval(rctx, lqj, n, x, OrthMode::recurrence));
    Rational grid = rctx.q_pow(2);
    REQUIRE(orth_eval(rctx, lqj, n, grid) ==
            orth_eval(rctx, lqj, n, grid, OrthMode::recurrence));
  }

  auto qh = make_family(rctx, Family::q_hahn, {rctx.q, rctx.q}, 6);
  for (long n = 0; n <= 6; ++n)
    for (long xi = 0; xi <= 6; ++xi) {
      Rational pt = rctx.q_pow(-xi);
      REQUIRE(orth_eval(rctx, qh, n, pt) ==
              orth_eval(rctx, qh, n, pt, OrthMode::recurrence));
    }
}

TEST_CASE("weight functions at sample points") {
  // little q-Jacobi at a = b = q: w(q^0) = 1, w(q^1) = 3/8
  auto lqj = make_family(rctx, Family::little_q_jacobi, {rctx.q, rctx.q});
  REQUIRE(orth_weight(rctx, lqj, Rational(1)) == Rational(1));
  REQUIRE(orth_weight(rctx, lqj, Rational(1, 2)) == Rational(3, 8));
  REQUIRE(qt::thrown_code([&] { orth_weight(rctx, lqj, Rational(3, 7)); }) ==
          errc::validation);

  auto qh = make_family(rctx, Family::q_hahn, {rctx.q, rctx.q}, 3);
  REQUIRE(orth_weight(rctx, qh, Rational(1)) == Rational(1));
  REQUIRE(qt::thrown_code([&] { orth_weight(rctx, qh, Rational(3)); }) ==
          errc::validation);

  auto asc = make_family(fctx, Family::al_salam_chihara, {0.3, 0.5});
  REQUIRE(std::abs(orth_weight(fctx, asc, 1.0)) < 1e-30);
  REQUIRE(std::abs(orth_weight(fctx, asc, -1.0)) < 1e-30);
  REQUIRE(orth_weight(fctx, asc, 0.3) > 0.0);
  REQUIRE(qt::thrown_code([&] { orth_weight(fctx, asc, 1.5); }) == errc::validation);
  auto asc_exact = make_family(rctx, Family::al_salam_chihara,
                               {Rational(1, 3), Rational(1, 5)});
  REQUIRE(qt::thrown_code([&] { orth_weight(rctx, asc_exact, Rational(1, 3)); }) ==
          errc::validation);
}

TEST_CASE("quadrature orthogonality of the trigonometric families") {
  auto asc = make_family(fctx, Family::al_salam_chihara, {0.3, 0.5});
  for (long m = 0; m <= 4; ++m)
    for (long n = m; n <= 4; ++n) {
      double ip = orth_inner_product(fctx, asc, m, n);
      double want = m == n ? orth_norm(fctx, asc, n) : 0.0;
      REQUIRE(std::abs(ip - want) < 1e-8);
    }

  auto cdh = make_family(fctx, Family::cont_dual_q_hahn, {0.3, 0.5, 0.2});
  for (long m = 0; m <= 4; ++m)
    for (long n = m; n <= 4; ++n) {
      double ip = orth_inner_product(fctx, cdh, m, n);
      double want = m == n ? orth_norm(fctx, cdh, n) : 0.0;
      REQUIRE(std::abs(ip - want) < 1e-8);
    }

  // no closed-form norm is exposed for askey_wilson, so normalize by the
  // diagonal entries instead
  auto aw = make_family(fctx, Family::askey_wilson, {0.3, 0.2, 0.1, 0.15});
  REQUIRE(qt::thrown_code([&] { orth_norm(fctx, aw, 0); }) == errc::not_implemented);
  std::vector<double> diag;
  for (long n = 0; n <= 3; ++n) diag.push_back(orth_inner_product(fctx, aw, n, n));
  for (long m = 0; m <= 3; ++m) {
    REQUIRE(diag[m] > 0.0);
    for (long n = m + 1; n <= 3; ++n) {
      double ip = orth_inner_product(fctx, aw, m, n);
      REQUIRE(std::abs(ip) / std::sqrt(diag[m] * diag[n]) < 1e-8);
    }
  }
}

TEST_CASE("discrete orthogonality") {
  // little q-Jacobi: truncated lattice sum against the closed-form norm
  auto lqj = make_family(fctx, Family::little_q_jacobi, {1.0 / 3.0, 0.2});
  for (long m = 0; m <= 4; ++m)
    for (long n = m; n <= 4; ++n) {
      double acc = 0.0;
      for (long k = 0; k <= 120; ++k) {
        double pt = std::pow(fctx.q, double(k));
        acc += orth_weight(fctx, lqj, pt) * orth_eval(fctx, lqj, m, pt) *
               orth_eval(fctx, lqj, n, pt);
      }
      double want = m == n ? orth_norm(fctx, lqj, n) : 0.0;
      REQUIRE(std::abs(acc - want) < 1e-10);
    }

  // q-Hahn: the full Gram matrix over the grid is exactly diag(h_n)
  auto qh = make_family(rctx, Family::q_hahn, {rctx.q, rctx.q}, 3);
  for (long m = 0; m <= 3; ++m)
    for (long n = 0; n <= 3; ++n) {
      Rational acc(0);
      for (long xi = 0; xi <= 3; ++xi) {
        Rational pt = rctx.q_pow(-xi);
        acc += orth_weight(rctx, qh, pt) * orth_eval(rctx, qh, m, pt) *
               orth_eval(rctx, qh, n, pt);
      }
      Rational want = m == n ? orth_norm(rctx, qh, n) : Rational(0);
      REQUIRE(acc == want);
    }
}

TEST_CASE("second-order difference equations") {
  auto asc = make_family(fctx, Family::al_salam_chihara, {0.3, 0.5});
  auto cdh = make_family(fctx, Family::cont_dual_q_hahn, {0.3, 0.5, 0.2});
  auto aw = make_family(fctx, Family::askey_wilson, {0.3, 0.2, 0.1, 0.15});
  // keep every Laurent argument q^{1/2} t, t, q^{-1/2} t on the ray u > 1,
  // where the substitute for (1 - x^2)^{-1/2} has a single consistent branch
  for (double t : {1.5, 1.9, 2.6})
    for (long n = 0; n <= 5; ++n) {
      REQUIRE(sl_residual_scaled(fctx, asc, n, t) < 1e-9);
      REQUIRE(sl_residual_scaled(fctx, cdh, n, t) < 1e-9);
      REQUIRE(sl_residual_scaled(fctx, aw, n, t) < 1e-9);
    }

  // little q-Jacobi: a(bqx - 1) y(qx) - [a(bqx - 1) + (x - 1)] y(x)
  //   + (x - 1) y(x/q) = q^{-n} (1 - q^n)(1 - a b q^{n+1}) x y(x), exactly
  Rational a(1, 3), b(1, 5), q = rctx.q;
  auto lqj = make_family(rctx, Family::little_q_jacobi, {a, b});
  for (const Rational& x : {Rational(1, 2), Rational(1, 4), Rational(3, 7)})
    for (long n = 0; n <= 5; ++n) {
      auto y = [&](const Rational& u) { return orth_eval(rctx, lqj, n, u); };
      Rational B = a * (b * q * x - Rational(1));
      Rational D = x - Rational(1);
      Rational rhs = B * y(q * x) - (B + D) * y(x) + D * y(x / q);
      Rational lhs = rctx.q_pow(-n) * (Rational(1) - rctx.q_pow(n)) *
                     (Rational(1) - a * b * rctx.q_pow(n + 1)) * x * y(x);
      REQUIRE(lhs == rhs);
    }

  // q-Hahn in the grid index: B(x) Y(x+1) - [B(x) + D(x)] Y(x) + D(x) Y(x-1)
  //   = q^{-n} (1 - q^n)(1 - alpha beta q^{n+1}) Y(x), exactly
  long N = 4;
  auto qh = make_family(rctx, Family::q_hahn, {q, q}, N);
  for (long n = 0; n <= N; ++n) {
    auto Y = [&](long xi) { return orth_eval(rctx, qh, n, rctx.q_pow(-xi)); };
    for (long xi = 1; xi < N; ++xi) {
      Rational B = (Rational(1) - rctx.q_pow(xi - N)) * (Rational(1) - q * rctx.q_pow(xi + 1));
      Rational D = q * q * (Rational(1) - rctx.q_pow(xi)) * (q - rctx.q_pow(xi - N - 1));
      Rational rhs = B * Y(xi + 1) - (B + D) * Y(xi) + D * Y(xi - 1);
      Rational lhs = rctx.q_pow(-n) * (Rational(1) - rctx.q_pow(n)) *
                     (Rational(1) - q * q * rctx.q_pow(n + 1)) * Y(xi);
      REQUIRE(lhs == rhs);
    }
  }
}

TEST_CASE("generating functions, coefficientwise") {
  Rational q = rctx.q;
  auto qfac = [&](long k) { return q_pochhammer(rctx, q, k); };

  SECTION("al_salam_chihara") {
    Rational a(1, 3), b(1, 5), x(3, 7);
    auto asc = make_family(rctx, Family::al_salam_chihara, {a, b});
    auto T = cheb_values(x, 5);
    auto euler = [&](const Rational& c, long u) {
      return rat_pow(-c, u) * rctx.q_pow(u * (u - 1) / 2) / qfac(u);
    };
    for (long n = 0; n <= 5; ++n) {
      Rational lhs(0);
      for (long u = 0; u <= n; ++u)
        for (long v = 0; u + v <= n; ++v) {
          long w = n - u - v;
          Rational cw(0);
          for (long i = 0; i <= w; ++i) {
            long j = w - i;
            cw += T[i >= j ? i - j : j - i] / (qfac(i) * qfac(j));
          }
          lhs += euler(a, u) * euler(b, v) * cw;
        }
      REQUIRE(lhs == orth_eval(rctx, asc, n, x) / qfac(n));
    }
  }

  SECTION("cont_dual_q_hahn") {
    double aa = 0.3, bb = 0.5, cc = 0.2, th = 0.7;
    auto cdh = make_family(fctx, Family::cont_dual_q_hahn, {aa, bb, cc});
    C eth = std::polar(1.0, th);
    auto qfacd = [&](long k) { return q_pochhammer(cctx, cctx.q, k); };
    std::vector<C> s1(6), s2(6), s3(6);
    for (long k = 0; k <= 5; ++k) {
      s1[k] = s_pow(C(-cc), k) * cctx.q_pow(k * (k - 1) / 2) / qfacd(k);
      s2[k] = s_pow(eth, k) / qfacd(k);
      s3[k] = q_pochhammer(cctx, aa * eth, k) * q_pochhammer(cctx, bb * eth, k) *
              s_pow(eth, -k) /
              (q_pochhammer(cctx, C(aa * bb), k) * qfacd(k));
    }
    for (long n = 0; n <= 5; ++n) {
      C lhs(0);
      for (long k = 0; k <= n; ++k)
        for (long l = 0; k + l <= n; ++l) lhs += s1[k] * s2[l] * s3[n - k - l];
      double pn = orth_eval(fctx, cdh, n, std::cos(th));
      C rhs = pn / (q_pochhammer(cctx, C(aa * bb), n) * qfacd(n));
      REQUIRE(std::abs(lhs.imag()) < 1e-12);
      REQUIRE(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(rhs)));
    }
  }

  SECTION("little_q_jacobi") {
    Rational a(1, 3), b(1, 5);
    auto lqj = make_family(rctx, Family::little_q_jacobi, {a, b});
    for (const Rational& x : {Rational(3, 7), Rational(1, 4)}) {
      for (long n = 0; n <= 5; ++n) {
        Rational lhs(0);
        for (long k = 0; k <= n; ++k) {
          long m = n - k;
          Rational L = rctx.q_pow(k * (k - 1)) * rat_pow(a * q * x, k) /
                       (q_pochhammer(rctx, a * q, k) * qfac(k));
          Rational M(1);
          for (long j = 0; j < m; ++j) M *= x - rctx.q_pow(j);
          M /= q_pochhammer(rctx, b * q, m) * qfac(m);
          lhs += L * M;
        }
        Rational rhs = rat_pow(Rational(-1), n) * rctx.q_pow(n * (n - 1) / 2) *
                       orth_eval(rctx, lqj, n, x) /
                       (q_pochhammer(rctx, b * q, n) * qfac(n));
        REQUIRE(lhs == rhs);
      }
    }
  }

  SECTION("q_hahn") {
    long N = 3;
    auto qh = make_family(rctx, Family::q_hahn, {q, q}, N);
    for (long xi = 0; xi <= N; ++xi) {
      for (long n = 0; n <= N; ++n) {
        Rational lhs(0);
        for (long k = 0; k <= n; ++k) {
          long m = n - k;
          Rational K = q_pochhammer(rctx, rctx.q_pow(-xi), k) * rat_pow(Rational(-1), k) *
                       rctx.q_pow(k * (k - 1) / 2) * rat_pow(q * q, k) /
                       (q_pochhammer(rctx, q * q, k) * qfac(k));
          Rational M = q_pochhammer(rctx, rctx.q_pow(xi - N), m) * rctx.q_pow(-xi * m) /
                       (q_pochhammer(rctx, q * q, m) * qfac(m));
          lhs += K * M;
        }
        Rational rhs = q_pochhammer(rctx, rctx.q_pow(-N), n) *
                       orth_eval(rctx, qh, n, rctx.q_pow(-xi)) /
                       (q_pochhammer(rctx, q * q, n) * qfac(n));
        REQUIRE(lhs == rhs);
      }
    }
  }
}

TEST_CASE("q_hahn approaches little_q_jacobi for large N") {
  long N = 30;
  auto qh = make_family(fctx, Family::q_hahn, {0.4, 0.3}, N);
  auto lqj = make_family(fctx, Family::little_q_jacobi, {0.4, 0.3});
  for (long x = 0; x <= 2; ++x)
    for (long n = 0; n <= 4; ++n) {
      double big = orth_eval(fctx, qh, n, fctx.q_pow(x - N));
      double lim = orth_eval(fctx, lqj, n, fctx.q_pow(x));
      REQUIRE(std::abs(big - lim) < 1e-6);
    }
}

TEST_CASE("family parameter validation") {
  REQUIRE(qt::thrown_code([&] {
            make_family(fctx, Family::askey_wilson, {0.3, 0.2, 0.1});
          }) == errc::validation);
  REQUIRE(qt::thrown_code([&] {
            make_family(fctx, Family::al_salam_chihara, {0.0, 0.5});
          }) == errc::validation);
  REQUIRE(qt::thrown_code([&] {
            make_family(fctx, Family::al_salam_chihara, {1.2, 0.5});
          }) == errc::validation);
  REQUIRE(qt::thrown_code([&] {
            make_family(cctx, Family::al_salam_chihara, {C(0.3, 0.2), C(0.5, 0.0)});
          }) == errc::validation);
  REQUIRE(qt::thrown_code([&] {
            make_family(fctx, Family::cont_dual_q_hahn, {0.3, 0.5, 1.1});
          }) == errc::validation);
  REQUIRE(qt::thrown_code([&] {
            make_family(fctx, Family::little_q_jacobi, {-0.3, 0.2});
          }) == errc::validation);
  REQUIRE(qt::thrown_code([&] {
            make_family(fctx, Family::little_q_jacobi, {2.5, 0.2});
          }) == errc::validation);
  REQUIRE(qt::thrown_code([&] {
            make_family(fctx, Family::q_hahn, {0.4, 0.3}, 0);
          }) == errc::validation);
  REQUIRE(qt::thrown_code([&] {
            make_family(fctx, Family::q_hahn, {3.0, 1.5}, 1);
          }) == errc::validation);

  // conjugate parameter pairs are accepted and give real values
  auto asc = make_family(cctx, Family::al_salam_chihara, {C(0.3, 0.2), C(0.3, -0.2)});
  for (long n = 0; n <= 6; ++n) {
    C v = orth_eval(cctx, asc, n, C(0.4, 0.0));
    C w = orth_eval(cctx, asc, n, C(0.4, 0.0), OrthMode::recurrence);
    REQUIRE(std::abs(v.imag()) < 1e-9);
    REQUIRE(std::abs(v - w) < 1e-9);
  }

  auto qh = make_family(rctx, Family::q_hahn, {rctx.q, rctx.q}, 3);
  REQUIRE(qt::thrown_code([&] { orth_eval(rctx, qh, 4, Rational(1)); }) ==
          errc::validation);
  REQUIRE(qt::thrown_code([&] { orth_eval(rctx, qh, 1, Rational(3, 7)); }) ==
          errc::validation);
  REQUIRE(qt::thrown_code([&] { orth_norm(rctx, qh, 4); }) == errc::validation);
  auto lqjf = make_family(fctx, Family::little_q_jacobi, {0.4, 0.3});
  REQUIRE(qt::thrown_code([&] { orth_inner_product(fctx, lqjf, 0, 0); }) ==
          errc::validation);
}
