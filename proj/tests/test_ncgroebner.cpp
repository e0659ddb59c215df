#include "helpers.hpp"

#include <initializer_list>
#include <string>
#include <vector>

using namespace qdha;
using RF = RatFunc;

namespace {

Word wd(std::initializer_list<int> ls) {
  Word w;
  for (int l : ls) w.push_back(static_cast<unsigned char>(l));
  return w;
}

template <class F>
NCPoly<F> mono(std::initializer_list<int> ls, const F& c) {
  return NCPoly<F>::monomial(wd(ls), c);
}

long rnd_int(long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  return d(qt::rng());
}

Word rnd_word(long nletters, long maxlen) {
  Word w;
  const long n = rnd_int(0, maxlen);
  for (long i = 0; i < n; ++i) w.push_back(static_cast<unsigned char>(rnd_int(0, nletters - 1)));
  return w;
}

template <class F>
NCPoly<F> rnd_poly(const QContext<F>& ctx, long nletters, long maxlen, long nterms) {
  NCPoly<F> p;
  for (long t = 0; t < nterms; ++t) {
    F c = ctx.q_pow(rnd_int(-2, 3));
    if (rnd_int(0, 1)) c = c - ctx.from_long(2);
    p.add_term(rnd_word(nletters, maxlen), c);
  }
  return p;
}

}  // namespace

TEST_CASE("degree-lexicographic word order") {
  CHECK(deglex_compare(wd({}), wd({0})) < 0);
  CHECK(deglex_compare(wd({0, 1}), wd({1, 0})) > 0);
  CHECK(deglex_compare(wd({0, 0}), wd({1})) > 0);
  CHECK(deglex_compare(wd({1, 0}), wd({1, 0})) == 0);
  for (int trial = 0; trial < 200; ++trial) {
    Word w1 = rnd_word(3, 4), w2 = rnd_word(3, 4);
    if (deglex_compare(w1, w2) == 0) continue;
    if (deglex_compare(w1, w2) > 0) std::swap(w1, w2);
    const Word u = rnd_word(3, 3), v = rnd_word(3, 3);
    CHECK(deglex_compare(word_concat(u, w1, v), word_concat(u, w2, v)) < 0);
  }
}

TEST_CASE("normal forms under a rewrite system") {
  auto ctx = make_formal_context();

  SECTION("defining relations reduce to zero") {
    auto alg = preset_algebra(ctx, Preset::anick_example);
    auto sys = complete(alg.alphabet, alg.relations);
    REQUIRE(sys.complete);
    for (const auto& r : alg.relations) CHECK(reduce(r, sys).is_zero());
  }
  SECTION("constants are already normal") {
    auto alg = preset_algebra(ctx, Preset::anick_example);
    auto sys = complete(alg.alphabet, alg.relations);
    auto c = NCPoly<RF>::constant(RF(5));
    CHECK(reduce(c, sys) == c);
  }
  SECTION("one step of the disc commutation") {
    auto alg = preset_algebra(ctx, Preset::pol_disc);
    auto sys = complete(alg.alphabet, alg.relations);
    REQUIRE(sys.rules.size() == 1);
    auto nf = reduce(mono<RF>({0, 1}, RF(1)), sys);
    auto expect = mono<RF>({1, 0}, RF::q(2)) + NCPoly<RF>::constant(RF(1) - RF::q(2));
    CHECK(nf == expect);
  }
  SECTION("idempotence on random polynomials") {
    auto alg = preset_algebra(ctx, Preset::sl2q);
    auto sys = complete(alg.alphabet, alg.relations);
    for (int trial = 0; trial < 25; ++trial) {
      auto p = rnd_poly(ctx, 4, 4, 5);
      auto nf = reduce(p, sys);
      CHECK(reduce(nf, sys) == nf);
    }
  }
}

TEST_CASE("completion adds the overlap-induced rule") {
  auto ctx = make_formal_context();
  auto alg = preset_algebra(ctx, Preset::anick_example);
  auto sys = complete(alg.alphabet, alg.relations);
  REQUIRE(sys.complete);
  REQUIRE(sys.rules.size() == 2);
  CHECK(sys.rules[0].lead == wd({0, 0}));
  CHECK(sys.rules[0].tail == mono<RF>({1, 1}, RF(-1)));
  CHECK(sys.rules[1].lead == wd({0, 1, 1}));
  CHECK(sys.rules[1].tail == mono<RF>({1, 1, 0}, RF(1)));
  CHECK(diamond_check(sys));

  auto n3 = normal_words(sys, 3);
  const std::vector<Word> expect3 = {wd({1, 1, 1}), wd({1, 1, 0}), wd({1, 0, 1}), wd({0, 1, 0})};
  CHECK(n3 == expect3);
  CHECK(hilbert_dims(sys, 5) == std::vector<long>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("single-relation algebras complete immediately") {
  auto ctx = make_formal_context();

  SECTION("quantum plane") {
    auto alg = preset_algebra(ctx, Preset::quantum_plane);
    auto sys = complete(alg.alphabet, alg.relations);
    REQUIRE(sys.complete);
    REQUIRE(sys.rules.size() == 1);
    CHECK(sys.rules[0].lead == wd({0, 1}));
    CHECK(sys.rules[0].tail == mono<RF>({1, 0}, RF::q(1)));
    CHECK(hilbert_dims(sys, 6) == std::vector<long>{1, 2, 3, 4, 5, 6, 7});
  }
  SECTION("disc algebra") {
    auto alg = preset_algebra(ctx, Preset::pol_disc);
    auto sys = complete(alg.alphabet, alg.relations);
    REQUIRE(sys.complete);
    REQUIRE(sys.rules.size() == 1);
    CHECK(sys.rules[0].lead == wd({0, 1}));
    CHECK(sys.rules[0].tail == mono<RF>({1, 0}, RF::q(2)) + NCPoly<RF>::constant(RF(1) - RF::q(2)));
    CHECK(normal_words(sys, 0) == std::vector<Word>{Word{}});
    auto n2 = normal_words(sys, 2);
    REQUIRE(n2.size() == 3);
    CHECK(word_to_string(n2[0], sys.alphabet) == "z * z");
    CHECK(word_to_string(n2[1], sys.alphabet) == "z * z*");
    CHECK(word_to_string(n2[2], sys.alphabet) == "z* * z*");
    CHECK(hilbert_dims(sys, 6) == std::vector<long>{1, 2, 3, 4, 5, 6, 7});
  }
}

TEST_CASE("completion of the quantum group relations") {
  auto ctx = make_formal_context();
  auto alg = preset_algebra(ctx, Preset::sl2q);
  auto sys = complete(alg.alphabet, alg.relations);
  REQUIRE(sys.complete);
  REQUIRE(sys.rules.size() == 7);
  const RF q = RF::q(1), q2 = RF::q(2), one(1);

  CHECK(sys.rules[0].lead == wd({2, 3}));  // t21 t22 -> q t22 t21
  CHECK(sys.rules[0].tail == mono<RF>({3, 2}, q));
  CHECK(sys.rules[1].lead == wd({2, 1}));  // t21 t12 -> q t22 t11 - q
  CHECK(sys.rules[1].tail == mono<RF>({3, 0}, q) - NCPoly<RF>::constant(q));
  CHECK(sys.rules[2].lead == wd({1, 3}));  // t12 t22 -> q t22 t12
  CHECK(sys.rules[2].tail == mono<RF>({3, 1}, q));
  CHECK(sys.rules[3].lead == wd({1, 2}));  // t12 t21 -> q t22 t11 - q
  CHECK(sys.rules[3].tail == mono<RF>({3, 0}, q) - NCPoly<RF>::constant(q));
  CHECK(sys.rules[4].lead == wd({0, 3}));  // t11 t22 -> q^2 t22 t11 + 1 - q^2
  CHECK(sys.rules[4].tail == mono<RF>({3, 0}, q2) + NCPoly<RF>::constant(one - q2));
  CHECK(sys.rules[5].lead == wd({0, 2}));  // t11 t21 -> q t21 t11
  CHECK(sys.rules[5].tail == mono<RF>({2, 0}, q));
  CHECK(sys.rules[6].lead == wd({0, 1}));  // t11 t12 -> q t12 t11
  CHECK(sys.rules[6].tail == mono<RF>({1, 0}, q));

  CHECK(diamond_check(sys));
  CHECK(hilbert_dims(sys, 5) == std::vector<long>{1, 4, 9, 16, 25, 36});
}

TEST_CASE("completion of the quantum matrix relations") {
  auto ctx = make_formal_context();
  auto alg = preset_algebra(ctx, Preset::mat2q);
  auto sys = complete(alg.alphabet, alg.relations);
  REQUIRE(sys.complete);
  REQUIRE(sys.rules.size() == 6);
  const RF q = RF::q(1);
  const RF qdiff = RF::q(1) - RF::q(-1);

  CHECK(sys.rules[0].lead == wd({2, 3}));  // z21 z22 -> q z22 z21
  CHECK(sys.rules[0].tail == mono<RF>({3, 2}, q));
  CHECK(sys.rules[1].lead == wd({1, 3}));  // z12 z22 -> q z22 z12
  CHECK(sys.rules[1].tail == mono<RF>({3, 1}, q));
  CHECK(sys.rules[2].lead == wd({1, 2}));  // z12 z21 -> z21 z12
  CHECK(sys.rules[2].tail == mono<RF>({2, 1}, RF(1)));
  CHECK(sys.rules[3].lead == wd({0, 3}));  // z11 z22 -> z22 z11 + (q - 1/q) z21 z12
  CHECK(sys.rules[3].tail == mono<RF>({3, 0}, RF(1)) + mono<RF>({2, 1}, qdiff));
  CHECK(sys.rules[4].lead == wd({0, 2}));  // z11 z21 -> q z21 z11
  CHECK(sys.rules[4].tail == mono<RF>({2, 0}, q));
  CHECK(sys.rules[5].lead == wd({0, 1}));  // z11 z12 -> q z12 z11
  CHECK(sys.rules[5].tail == mono<RF>({1, 0}, q));

  CHECK(diamond_check(sys));
  CHECK(hilbert_dims(sys, 6) == std::vector<long>{1, 4, 10, 20, 35, 56, 84});
}

TEST_CASE("diamond lemma verification") {
  RewriteSystem<RF> empty{Alphabet{{"x", "y"}}, {}, 4, true};
  CHECK(diamond_check(empty));

  RewriteSystem<RF> half{
      Alphabet{{"x", "y"}}, {Rule<RF>{wd({0, 0}), mono<RF>({1, 1}, RF(-1))}}, 4, true};
  CHECK_FALSE(diamond_check(half));

  auto ctx = make_formal_context();
  for (Preset p : {Preset::quantum_plane, Preset::pol_disc, Preset::sl2q, Preset::mat2q,
                   Preset::anick_example}) {
    auto alg = preset_algebra(ctx, p);
    CHECK(diamond_check(complete(alg.alphabet, alg.relations)));
  }
}

TEST_CASE("ideal membership and the normal complement") {
  auto ctx = make_formal_context();
  auto alg = preset_algebra(ctx, Preset::sl2q);
  auto sys = complete(alg.alphabet, alg.relations);
  REQUIRE(sys.complete);

  SECTION("two-sided combinations of relations reduce to zero") {
    for (int trial = 0; trial < 20; ++trial) {
      NCPoly<RF> p;
      for (int s = 0; s < 3; ++s) {
        const auto& r = alg.relations[static_cast<size_t>(
            rnd_int(0, static_cast<long>(alg.relations.size()) - 1))];
        p = p + NCPoly<RF>::monomial(rnd_word(4, 2), ctx.q_pow(rnd_int(-1, 2))) * r *
                    NCPoly<RF>::monomial(rnd_word(4, 2), RF(1));
      }
      CHECK(reduce(p, sys).is_zero());
    }
  }
  SECTION("a polynomial minus its normal form lies in the ideal") {
    for (int trial = 0; trial < 10; ++trial) {
      auto p = rnd_poly(ctx, 4, 4, 4);
      auto nf = reduce(p, sys);
      CHECK(reduce(p - nf, sys).is_zero());
      for (const auto& [w, c] : nf.terms) {
        bool lead_free = true;
        for (const auto& r : sys.rules)
          if (subword_find(w, r.lead) >= 0) lead_free = false;
        CHECK(lead_free);
      }
    }
  }
}

TEST_CASE("completion commutes with coefficient specialization") {
  // q = 1/4 keeps the half power s = 1/2 inside the rationals
  auto formal = make_formal_context();
  auto numctx = make_context(Rational(1, 4));
  for (Preset which : {Preset::pol_disc, Preset::sl2q, Preset::mat2q}) {
    auto falg = preset_algebra(formal, which);
    auto nalg = preset_algebra(numctx, which);
    auto fsys = complete(falg.alphabet, falg.relations);
    auto nsys = complete(nalg.alphabet, nalg.relations);
    REQUIRE(fsys.complete);
    REQUIRE(nsys.complete);
    REQUIRE(fsys.rules.size() == nsys.rules.size());
    for (size_t i = 0; i < fsys.rules.size(); ++i) {
      CHECK(fsys.rules[i].lead == nsys.rules[i].lead);
      const auto& ft = fsys.rules[i].tail.terms;
      const auto& nt = nsys.rules[i].tail.terms;
      REQUIRE(ft.size() == nt.size());
      auto fit = ft.begin();
      auto nit = nt.begin();
      for (; fit != ft.end(); ++fit, ++nit) {
        CHECK(fit->first == nit->first);
        CHECK(fit->second.eval_exact(Rational(1, 2)) == nit->second);
      }
    }
  }
}

TEST_CASE("caps return a partial system") {
  // x^2 -> x y spawns the infinite family x y^k x -> x y^(k+1)
  Alphabet ab{{"x", "y"}};
  std::vector<NCPoly<RF>> rel = {mono<RF>({0, 0}, RF(1)) - mono<RF>({0, 1}, RF(1))};
  auto sys = complete(ab, rel, 6);
  CHECK_FALSE(sys.complete);
  CHECK(sys.rules.size() >= 2);
  CHECK(qt::thrown_code([&] { normal_words(sys, 2); }) == errc::validation);
  CHECK(qt::thrown_code([&] { hilbert_dims(sys, 2); }) == errc::validation);

  auto ctx = make_formal_context();
  auto alg = preset_algebra(ctx, Preset::sl2q);
  auto tiny = complete(alg.alphabet, alg.relations, -1, 3);
  CHECK_FALSE(tiny.complete);
}

TEST_CASE("completion input validation") {
  Alphabet ab{{"x", "y"}};
  CHECK(qt::thrown_code([&] { complete<RF>(ab, {NCPoly<RF>{}}); }) == errc::validation);
  CHECK(qt::thrown_code([&] { complete<RF>(ab, {mono<RF>({0, 0}, RF(1))}, 1); }) ==
        errc::validation);
  // x = 1 against x = 2 forces a nonzero constant into the ideal
  std::vector<NCPoly<RF>> bad = {mono<RF>({0}, RF(1)) - NCPoly<RF>::constant(RF(1)),
                                 mono<RF>({0}, RF(1)) - NCPoly<RF>::constant(RF(2))};
  CHECK(qt::thrown_code([&] { complete(ab, bad); }) == errc::validation);
}

TEST_CASE("relation files parse, print, and round trip") {
  SECTION("hand-written disc relation matches the preset") {
    const std::string text =
        "alphabet: z* > z\n"
        "\n"
        "z* * z - q^2 * z * z* - 1 + q^2\n";
    auto rf = parse_relations(text);
    REQUIRE(rf.alphabet.names == std::vector<std::string>{"z*", "z"});
    REQUIRE(rf.relations.size() == 1);
    auto ctx = make_formal_context();
    auto alg = preset_algebra(ctx, Preset::pol_disc);
    CHECK(rf.relations[0] == alg.relations[0]);
    auto sys = complete(rf.alphabet, rf.relations);
    CHECK(sys.complete);
    CHECK(sys.rules.size() == 1);
  }
  SECTION("canonical text round trips bit for bit") {
    auto ctx = make_formal_context();
    for (Preset p : {Preset::quantum_plane, Preset::pol_disc, Preset::sl2q, Preset::mat2q,
                     Preset::anick_example}) {
      auto alg = preset_algebra(ctx, p);
      RelationFile rf{alg.alphabet, alg.relations};
      auto back = parse_relations(relation_file_to_string(rf));
      CHECK(back.alphabet.names == alg.alphabet.names);
      REQUIRE(back.relations.size() == alg.relations.size());
      for (size_t i = 0; i < alg.relations.size(); ++i)
        CHECK(back.relations[i] == alg.relations[i]);
    }
  }
  SECTION("half powers of q") {
    const std::string text =
        "alphabet: x > y\n"
        "q^(1/2) * x * y + (1 - q^(3/2)) * y\n";
    auto rf = parse_relations(text);
    auto expect = mono<RF>({0, 1}, RF::s(1)) + mono<RF>({1}, RF(1) - RF::s(3));
    CHECK(rf.relations[0] == expect);
    auto printed = poly_to_string(rf.relations[0], rf.alphabet);
    auto again = parse_relations("alphabet: x > y\n" + printed + "\n");
    CHECK(again.relations[0] == rf.relations[0]);
  }
  SECTION("rational coefficients and division") {
    const std::string text =
        "alphabet: x > y\n"
        "(q/(1 - q)) * x - 1/2 * y\n";
    auto rf = parse_relations(text);
    auto expect = mono<RF>({0}, RF::q(1) / (RF(1) - RF::q(1))) - mono<RF>({1}, RF(Rational(1, 2)));
    CHECK(rf.relations[0] == expect);
  }
  SECTION("rejects malformed input") {
    CHECK(qt::thrown_code([] { parse_relations("x + y\n"); }) == errc::validation);
    CHECK(qt::thrown_code([] { parse_relations("alphabet: x > y\nx + w\n"); }) == errc::validation);
    CHECK(qt::thrown_code([] { parse_relations("alphabet: x > y\nq^(1/3) * x\n"); }) ==
          errc::validation);
    CHECK(qt::thrown_code([] { parse_relations("alphabet: x > y\nx - x\n"); }) == errc::validation);
    CHECK(qt::thrown_code([] { parse_relations("alphabet: x > x\nx\n"); }) == errc::validation);
  }
}

TEST_CASE("preset lookup by name") {
  CHECK(preset_from_string("sl2q") == Preset::sl2q);
  CHECK(preset_from_string("anick_example") == Preset::anick_example);
  CHECK(preset_name(Preset::mat2q) == "mat2q");
  CHECK(qt::thrown_code([] { preset_from_string("frobnicate"); }) == errc::validation);
}
