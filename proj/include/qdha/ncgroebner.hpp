#pragma once

// Noncommutative Groebner machinery over an exact coefficient field: words in
// a finite ordered alphabet under degree-lexicographic order, polynomials as
// word/coefficient maps, rewrite systems with normal-form reduction, overlap
// completion, diamond-lemma verification, normal-word enumeration, a preset
// algebra catalog, and a plain-text relation file format.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ratfunc.hpp"

namespace qdha {

// Letters are indices into names; names[0] is the LARGEST letter.
struct Alphabet {
  std::vector<std::string> names;

  long size() const { return static_cast<long>(names.size()); }
  long index_of(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<long>(i);
    return -1;
  }
};

using Word = std::vector<unsigned char>;

// Degree-lexicographic: shorter words first; at equal length letterwise, where
// a smaller index is a larger letter. Returns -1, 0, or 1. Compatible with
// concatenation on both sides.
inline int deglex_compare(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  return 0;
}

struct DeglexLess {
  bool operator()(const Word& a, const Word& b) const { return deglex_compare(a, b) < 0; }
};

inline Word word_concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

inline Word word_concat(const Word& a, const Word& b, const Word& c) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  r.insert(r.end(), c.begin(), c.end());
  return r;
}

// Leftmost occurrence of pat in w, or -1.
inline long subword_find(const Word& w, const Word& pat) {
  if (pat.size() > w.size()) return -1;
  auto it = std::search(w.begin(), w.end(), pat.begin(), pat.end());
  return it == w.end() ? -1 : static_cast<long>(it - w.begin());
}

// Invariant: no stored coefficient is zero.
template <class F>
class NCPoly {
 public:
  std::map<Word, F, DeglexLess> terms;

  NCPoly() = default;

  static NCPoly constant(const F& c) {
    NCPoly p;
    p.add_term(Word{}, c);
    return p;
  }
  static NCPoly monomial(Word w, const F& c) {
    NCPoly p;
    p.add_term(std::move(w), c);
    return p;
  }

  bool is_zero() const { return terms.empty(); }
  long degree() const {
    return terms.empty() ? -1 : static_cast<long>(std::prev(terms.end())->first.size());
  }
  const Word& leading_word() const {
    if (terms.empty()) fail(errc::validation, "NCPoly: leading term of the zero polynomial");
    return std::prev(terms.end())->first;
  }
  const F& leading_coeff() const {
    if (terms.empty()) fail(errc::validation, "NCPoly: leading term of the zero polynomial");
    return std::prev(terms.end())->second;
  }

  void add_term(Word w, const F& c) {
    if (s_is_zero(c)) return;
    auto [it, fresh] = terms.emplace(std::move(w), c);
    if (!fresh) {
      it->second = it->second + c;
      if (s_is_zero(it->second)) terms.erase(it);
    }
  }

  NCPoly scaled(const F& c) const {
    NCPoly r;
    for (const auto& [w, a] : terms) r.add_term(w, a * c);
    return r;
  }

  NCPoly operator-() const {
    NCPoly r;
    for (const auto& [w, a] : terms) r.terms.emplace(w, -a);
    return r;
  }
  friend NCPoly operator+(const NCPoly& x, const NCPoly& y) {
    NCPoly r = x;
    for (const auto& [w, a] : y.terms) r.add_term(w, a);
    return r;
  }
  friend NCPoly operator-(const NCPoly& x, const NCPoly& y) {
    NCPoly r = x;
    for (const auto& [w, a] : y.terms) r.add_term(w, -a);
    return r;
  }
  friend NCPoly operator*(const NCPoly& x, const NCPoly& y) {
    NCPoly r;
    for (const auto& [wx, cx] : x.terms)
      for (const auto& [wy, cy] : y.terms) r.add_term(word_concat(wx, wy), cx * cy);
    return r;
  }
  friend bool operator==(const NCPoly& x, const NCPoly& y) { return x.terms == y.terms; }
  friend bool operator!=(const NCPoly& x, const NCPoly& y) { return !(x == y); }
};

// lead is monic; every tail word is deglex-smaller than lead.
template <class F>
struct Rule {
  Word lead;
  NCPoly<F> tail;
};

// rules stay deglex-sorted by lead and interreduced: no lead is a subword of
// another lead, and tails are in normal form. complete=false marks a system
// returned after hitting degree_cap or iter_cap.
template <class F>
struct RewriteSystem {
  Alphabet alphabet;
  std::vector<Rule<F>> rules;
  long degree_cap = 0;
  bool complete = false;
};

// Normal form: repeatedly take the deglex-largest remaining term and rewrite
// the leftmost occurrence of an applicable lead. Each step replaces a word by
// strictly smaller ones, so the largest touched word strictly decreases.
template <class F>
NCPoly<F> reduce(const NCPoly<F>& p, const RewriteSystem<F>& sys) {
  NCPoly<F> out;
  NCPoly<F> work = p;
  while (!work.terms.empty()) {
    auto top = std::prev(work.terms.end());
    const Word w = top->first;
    const F c = top->second;
    work.terms.erase(top);
    long best_pos = -1;
    const Rule<F>* best = nullptr;
    for (const auto& r : sys.rules) {
      long pos = subword_find(w, r.lead);
      if (pos >= 0 && (best_pos < 0 || pos < best_pos)) {
        best_pos = pos;
        best = &r;
      }
    }
    if (!best) {
      out.terms.emplace(w, c);
      continue;
    }
    const Word a(w.begin(), w.begin() + best_pos);
    const Word b(w.begin() + best_pos + static_cast<long>(best->lead.size()), w.end());
    for (const auto& [tw, tc] : best->tail.terms) work.add_term(word_concat(a, tw, b), c * tc);
  }
  return out;
}

namespace detail {

// Proper overlap lengths k: the length-k suffix of A equals the length-k
// prefix of B, with 0 < k < min(|A|, |B|). Containments are excluded; they
// are handled by interreduction.
inline std::vector<long> overlap_lengths(const Word& A, const Word& B) {
  std::vector<long> ks;
  const long kmax = static_cast<long>(std::min(A.size(), B.size())) - 1;
  for (long k = 1; k <= kmax; ++k)
    if (std::equal(A.end() - k, A.end(), B.begin())) ks.push_back(k);
  return ks;
}

// Ambiguity w = x|y|z with lead(u) = xy, lead(v) = yz, |y| = k > 0:
// the two rewrites of w differ by tail(u) z - x tail(v).
template <class F>
NCPoly<F> overlap_difference(const Rule<F>& u, const Rule<F>& v, long k) {
  const Word x(u.lead.begin(), u.lead.end() - k);
  const Word z(v.lead.begin() + k, v.lead.end());
  return u.tail * NCPoly<F>::monomial(z, F(1)) - NCPoly<F>::monomial(x, F(1)) * v.tail;
}

}  // namespace detail

// Completion: absorb relations as monic rules (largest-priority: normalize,
// then interreduce, then compose), queueing every proper overlap of two rule
// leads, smallest overlap word first. A pair is formed at most once. Stops
// with complete=false when a rule lead would exceed degree_cap or after
// iter_cap loop iterations; the partial system is still a valid rewrite
// system for a subset of the ideal.
template <class F>
RewriteSystem<F> complete(const Alphabet& alphabet, const std::vector<NCPoly<F>>& relations,
                          long degree_cap = -1, long iter_cap = 200000) {
  long maxdeg = 0;
  for (const auto& r : relations) {
    if (r.is_zero()) fail(errc::validation, "complete: zero relation");
    for (const auto& [w, c] : r.terms)
      for (unsigned char l : w)
        if (static_cast<long>(l) >= alphabet.size())
          fail(errc::validation, "complete: letter index outside alphabet");
    maxdeg = std::max(maxdeg, r.degree());
  }
  if (degree_cap < 0) degree_cap = 2 * maxdeg + 4;
  if (degree_cap < maxdeg) fail(errc::validation, "complete: degree_cap below relation degree");

  RewriteSystem<F> sys{alphabet, {}, degree_cap, false};

  struct QItem {
    Word w;  // overlap word
    Word lu, lv;
    long k;
  };
  struct QLess {
    bool operator()(const QItem& x, const QItem& y) const {
      int c = deglex_compare(x.w, y.w);
      if (c != 0) return c < 0;
      if (x.lu != y.lu) return x.lu < y.lu;
      if (x.lv != y.lv) return x.lv < y.lv;
      return x.k < y.k;
    }
  };
  std::set<QItem, QLess> queue;
  std::set<std::tuple<Word, Word, long>> formed;

  std::vector<NCPoly<F>> pending(relations.begin(), relations.end());

  auto find_rule = [&](const Word& lead) -> const Rule<F>* {
    for (const auto& r : sys.rules)
      if (r.lead == lead) return &r;
    return nullptr;
  };
  auto enqueue_overlaps = [&](const Word& nl) {
    for (const auto& r : sys.rules) {
      for (long k : detail::overlap_lengths(nl, r.lead))
        if (formed.emplace(nl, r.lead, k).second) {
          Word w = nl;
          w.insert(w.end(), r.lead.begin() + k, r.lead.end());
          queue.insert({std::move(w), nl, r.lead, k});
        }
      for (long k : detail::overlap_lengths(r.lead, nl))
        if (formed.emplace(r.lead, nl, k).second) {
          Word w = r.lead;
          w.insert(w.end(), nl.begin() + k, nl.end());
          queue.insert({std::move(w), r.lead, nl, k});
        }
    }
  };

  long iters = 0;
  bool capped = false;
  while (true) {
    if (++iters > iter_cap) {
      capped = true;
      break;
    }
    if (!pending.empty()) {
      NCPoly<F> p = std::move(pending.back());
      pending.pop_back();
      NCPoly<F> nf = reduce(p, sys);
      if (nf.is_zero()) continue;
      if (nf.leading_word().empty())
        fail(errc::validation, "complete: relations generate the unit ideal");
      if (nf.degree() > degree_cap) {
        capped = true;
        break;
      }
      const F lc = nf.leading_coeff();
      Word lead = nf.leading_word();
      NCPoly<F> tail;
      for (const auto& [w, c] : nf.terms)
        if (w != lead) tail.add_term(w, -(c / lc));
      // retire rules whose lead contains the new lead, and requeue them
      std::vector<Rule<F>> kept;
      for (auto& r : sys.rules) {
        if (subword_find(r.lead, lead) >= 0)
          pending.push_back(NCPoly<F>::monomial(r.lead, F(1)) - r.tail);
        else
          kept.push_back(std::move(r));
      }
      sys.rules = std::move(kept);
      Rule<F> nr{std::move(lead), std::move(tail)};
      auto pos = std::lower_bound(
          sys.rules.begin(), sys.rules.end(), nr,
          [](const Rule<F>& x, const Rule<F>& y) { return DeglexLess{}(x.lead, y.lead); });
      pos = sys.rules.insert(pos, std::move(nr));
      for (auto& r : sys.rules) r.tail = reduce(r.tail, sys);
      enqueue_overlaps(pos->lead);
      continue;
    }
    if (queue.empty()) break;
    QItem item = *queue.begin();
    queue.erase(queue.begin());
    const Rule<F>* u = find_rule(item.lu);
    const Rule<F>* v = find_rule(item.lv);
    if (!u || !v) continue;  // a participant was retired
    pending.push_back(detail::overlap_difference(*u, *v, item.k));
  }
  sys.complete = !capped;
  return sys;
}

// Every proper overlap ambiguity of two rule leads resolves to zero.
template <class F>
bool diamond_check(const RewriteSystem<F>& sys) {
  for (const auto& u : sys.rules)
    for (const auto& v : sys.rules)
      for (long k : detail::overlap_lengths(u.lead, v.lead))
        if (!reduce(detail::overlap_difference(u, v, k), sys).is_zero()) return false;
  return true;
}

// All words of the given degree containing no rule lead, deglex-ascending.
template <class F>
std::vector<Word> normal_words(const RewriteSystem<F>& sys, long degree) {
  if (!sys.complete) fail(errc::validation, "normal_words: rewrite system is not complete");
  if (degree < 0) fail(errc::validation, "normal_words: negative degree");
  const long K = sys.alphabet.size();
  std::vector<Word> out;
  Word w;
  auto blocked = [&](const Word& cur) {
    for (const auto& r : sys.rules) {
      const size_t L = r.lead.size();
      if (L <= cur.size() && std::equal(r.lead.begin(), r.lead.end(), cur.end() - L)) return true;
    }
    return false;
  };
  auto dfs = [&](auto&& self) -> void {
    if (static_cast<long>(w.size()) == degree) {
      out.push_back(w);
      return;
    }
    for (long i = K - 1; i >= 0; --i) {  // smallest letter first: ascending output
      w.push_back(static_cast<unsigned char>(i));
      if (!blocked(w)) self(self);
      w.pop_back();
    }
  };
  dfs(dfs);
  return out;
}

// Normal-word counts for degrees 0..dmax. Normality is closed under taking
// prefixes, so one walk of the prefix tree counts every level.
template <class F>
std::vector<long> hilbert_dims(const RewriteSystem<F>& sys, long dmax) {
  if (!sys.complete) fail(errc::validation, "hilbert_dims: rewrite system is not complete");
  if (dmax < 0) fail(errc::validation, "hilbert_dims: negative degree");
  const long K = sys.alphabet.size();
  std::vector<long> dims(static_cast<size_t>(dmax) + 1, 0);
  Word w;
  auto blocked = [&](const Word& cur) {
    for (const auto& r : sys.rules) {
      const size_t L = r.lead.size();
      if (L <= cur.size() && std::equal(r.lead.begin(), r.lead.end(), cur.end() - L)) return true;
    }
    return false;
  };
  auto dfs = [&](auto&& self) -> void {
    ++dims[w.size()];
    if (static_cast<long>(w.size()) == dmax) return;
    for (long i = K - 1; i >= 0; --i) {
      w.push_back(static_cast<unsigned char>(i));
      if (!blocked(w)) self(self);
      w.pop_back();
    }
  };
  dfs(dfs);
  return dims;
}

enum class Preset { quantum_plane, pol_disc, sl2q, mat2q, anick_example };

inline Preset preset_from_string(const std::string& name) {
  if (name == "quantum_plane") return Preset::quantum_plane;
  if (name == "pol_disc") return Preset::pol_disc;
  if (name == "sl2q") return Preset::sl2q;
  if (name == "mat2q") return Preset::mat2q;
  if (name == "anick_example") return Preset::anick_example;
  fail(errc::validation, "unknown preset: " + name);
}

inline std::string preset_name(Preset p) {
  switch (p) {
    case Preset::quantum_plane: return "quantum_plane";
    case Preset::pol_disc: return "pol_disc";
    case Preset::sl2q: return "sl2q";
    case Preset::mat2q: return "mat2q";
    case Preset::anick_example: return "anick_example";
  }
  fail(errc::validation, "unknown preset");
}

template <class F>
struct PresetAlgebra {
  Alphabet alphabet;
  std::vector<NCPoly<F>> relations;
};

template <class F>
PresetAlgebra<F> preset_algebra(const QContext<F>& ctx, Preset which) {
  const F one(1);
  const F q = ctx.q;
  auto mono = [](std::initializer_list<int> ls, const F& c) {
    Word w;
    for (int l : ls) w.push_back(static_cast<unsigned char>(l));
    return NCPoly<F>::monomial(std::move(w), c);
  };
  switch (which) {
    case Preset::quantum_plane:
      // t2 t1 = q t1 t2
      return {Alphabet{{"t2", "t1"}}, {mono({0, 1}, one) - mono({1, 0}, q)}};
    case Preset::pol_disc:
      // z* z = q^2 z z* + (1 - q^2)
      return {Alphabet{{"z*", "z"}},
              {mono({0, 1}, one) - mono({1, 0}, q * q) - NCPoly<F>::constant(one - q * q)}};
    case Preset::anick_example:
      // x^2 + y^2
      return {Alphabet{{"x", "y"}}, {mono({0, 0}, one) + mono({1, 1}, one)}};
    case Preset::sl2q: {
      // row and column q-commutation, commuting antidiagonal, the mixed
      // diagonal relation, and the unit quantum determinant
      const F qinv = one / q;
      std::vector<NCPoly<F>> rel;
      rel.push_back(mono({0, 1}, one) - mono({1, 0}, q));
      rel.push_back(mono({0, 2}, one) - mono({2, 0}, q));
      rel.push_back(mono({1, 3}, one) - mono({3, 1}, q));
      rel.push_back(mono({2, 3}, one) - mono({3, 2}, q));
      rel.push_back(mono({1, 2}, one) - mono({2, 1}, one));
      rel.push_back(mono({0, 3}, one) - mono({3, 0}, one) - mono({1, 2}, q - qinv));
      rel.push_back(mono({0, 3}, one) - mono({1, 2}, q) - NCPoly<F>::constant(one));
      return {Alphabet{{"t11", "t12", "t21", "t22"}}, std::move(rel)};
    }
    case Preset::mat2q: {
      const F qinv = one / q;
      std::vector<NCPoly<F>> rel;
      rel.push_back(mono({0, 1}, one) - mono({1, 0}, q));
      rel.push_back(mono({2, 3}, one) - mono({3, 2}, q));
      rel.push_back(mono({0, 2}, one) - mono({2, 0}, q));
      rel.push_back(mono({1, 3}, one) - mono({3, 1}, q));
      rel.push_back(mono({1, 2}, one) - mono({2, 1}, one));
      rel.push_back(mono({0, 3}, one) - mono({3, 0}, one) - mono({2, 1}, q - qinv));
      return {Alphabet{{"z11", "z12", "z21", "z22"}}, std::move(rel)};
    }
  }
  fail(errc::validation, "preset_algebra: unknown preset");
}

// ---------------------------------------------------------------------------
// Relation file format. First line: "alphabet: a > b > c". Each further
// nonblank line is one polynomial: terms joined by top-level + and -, each
// term a '*'-separated product of letter names and rational-function
// coefficient literals in q (half powers written q^(1/2), q^(3/2), ...).
// Letter names are matched greedily before coefficient syntax.

namespace detail {

inline std::string trim_copy(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

class CoeffParser {
 public:
  explicit CoeffParser(std::string text) : text_(std::move(text)) {}

  RatFunc parse() {
    RatFunc v = expr();
    skip_ws();
    if (pos_ != text_.size())
      fail(errc::validation, "relation coefficient: trailing characters in '" + text_ + "'");
    return v;
  }

 private:
  std::string text_;
  size_t pos_ = 0;

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    if (peek() != c)
      fail(errc::validation, std::string("relation coefficient: expected '") + c + "' in '" + text_ + "'");
    ++pos_;
  }

  Int read_integer() {
    skip_ws();
    std::string digits;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      digits += text_[pos_++];
    if (digits.empty())
      fail(errc::validation, "relation coefficient: expected an integer in '" + text_ + "'");
    return Int(digits);
  }

  long read_small_signed() {
    skip_ws();
    long sign = 1;
    if (peek() == '-') {
      sign = -1;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    return sign * read_integer().convert_to<long>();
  }

  static RatFunc rf_pow(const RatFunc& base, long n) {
    if (n < 0) return rf_pow(RatFunc(1) / base, -n);
    RatFunc r(1), b = base;
    long k = n;
    while (k > 0) {
      if (k & 1) r *= b;
      b *= b;
      k >>= 1;
    }
    return r;
  }

  RatFunc expr() {
    skip_ws();
    int sign = 1;
    if (peek() == '-') {
      sign = -1;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    RatFunc v = term();
    if (sign < 0) v = -v;
    while (true) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      RatFunc t = term();
      v = (c == '+') ? v + t : v - t;
    }
    return v;
  }

  RatFunc term() {
    RatFunc v = factor();
    while (true) {
      skip_ws();
      char c = peek();
      if (c != '*' && c != '/') break;
      ++pos_;
      RatFunc f = factor();
      v = (c == '*') ? v * f : v / f;
    }
    return v;
  }

  RatFunc factor() {
    skip_ws();
    bool is_q = false;
    RatFunc base;
    char c = peek();
    if (c == '(') {
      ++pos_;
      base = expr();
      skip_ws();
      expect(')');
    } else if (c == 'q') {
      ++pos_;
      base = RatFunc::q(1);
      is_q = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      base = RatFunc(Rational(read_integer()));
    } else {
      fail(errc::validation, "relation coefficient: unexpected symbol in '" + text_ + "'");
    }
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    long en = 0, ed = 1;
    if (peek() == '(') {
      ++pos_;
      en = read_small_signed();
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        ed = read_integer().convert_to<long>();
      }
      skip_ws();
      expect(')');
    } else {
      en = read_small_signed();
    }
    if (ed == 2) {
      if (!is_q) fail(errc::validation, "relation coefficient: half powers apply to q only");
      return RatFunc::s(en);
    }
    if (ed != 1) fail(errc::validation, "relation coefficient: exponent denominator must be 1 or 2");
    if (is_q) return RatFunc::q(en);
    return rf_pow(base, en);
  }
};

// Split a polynomial line into (sign, term text) at top-level + and -. A sign
// directly after an operator, '(' or '^' binds to the literal instead.
inline std::vector<std::pair<int, std::string>> split_terms(const std::string& line) {
  std::vector<std::pair<int, std::string>> out;
  int depth = 0;
  int sign = 1;
  std::string cur;
  char prev = '\0';
  for (char c : line) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == '+' || c == '-')) {
      if (trim_copy(cur).empty()) {  // sign in front of the upcoming term
        if (c == '-') sign = -sign;
        continue;
      }
      // a sign right after '^' or '/' binds into the literal (q^-2); '*' may
      // end a letter name, so it never suppresses a term boundary
      if (prev != '^' && prev != '/') {
        out.emplace_back(sign, cur);
        sign = (c == '-') ? -1 : 1;
        cur.clear();
        prev = '\0';
        continue;
      }
    }
    cur += c;
    if (!std::isspace(static_cast<unsigned char>(c))) prev = c;
  }
  if (!trim_copy(cur).empty()) out.emplace_back(sign, cur);
  return out;
}

inline void parse_term(const std::string& term, int sign, const Alphabet& alph,
                       NCPoly<RatFunc>& acc) {
  const std::string t = trim_copy(term);
  if (t.empty()) fail(errc::validation, "relation term: empty term");
  size_t pos = 0;
  RatFunc coeff(sign);
  Word w;
  bool expect_factor = true;
  while (pos < t.size()) {
    if (std::isspace(static_cast<unsigned char>(t[pos]))) {
      ++pos;
      continue;
    }
    if (!expect_factor) {
      if (t[pos] != '*')
        fail(errc::validation, "relation term: expected '*' between factors in '" + t + "'");
      ++pos;
      expect_factor = true;
      continue;
    }
    long best = -1;
    size_t best_len = 0;
    for (size_t i = 0; i < alph.names.size(); ++i) {
      const std::string& n = alph.names[i];
      if (n.size() > best_len && t.compare(pos, n.size(), n) == 0) {
        best = static_cast<long>(i);
        best_len = n.size();
      }
    }
    if (best >= 0) {
      w.push_back(static_cast<unsigned char>(best));
      pos += best_len;
      expect_factor = false;
      continue;
    }
    size_t end = pos;
    int depth = 0;
    for (; end < t.size(); ++end) {
      char c = t[end];
      if (c == '(') ++depth;
      else if (c == ')') --depth;
      else if (c == '*' && depth == 0) break;
    }
    std::string chunk = trim_copy(t.substr(pos, end - pos));
    if (chunk.empty()) fail(errc::validation, "relation term: dangling '*' in '" + t + "'");
    coeff *= CoeffParser(chunk).parse();
    pos = end;
    expect_factor = false;
  }
  if (expect_factor) fail(errc::validation, "relation term: dangling '*' in '" + t + "'");
  acc.add_term(std::move(w), coeff);
}

// Polynomial in s with s^2 = q, rendered in q with half powers.
inline std::string zpoly_q_string(const ZPoly& p) {
  if (zp::is_zero(p)) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = zp::deg(p); i >= 0; --i) {
    const Int& c = p[static_cast<size_t>(i)];
    if (c == 0) continue;
    Int a = boost::multiprecision::abs(c);
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    if (i == 0) {
      os << a;
      continue;
    }
    if (a != 1) os << a << "*";
    if (i == 2) os << "q";
    else if (i % 2 == 0) os << "q^" << (i / 2);
    else os << "q^(" << i << "/2)";
  }
  return os.str();
}

}  // namespace detail

inline std::string coeff_to_q_string(const RatFunc& f) {
  if (f.is_zero()) return "0";
  std::string n = detail::zpoly_q_string(f.num());
  if (f.den().size() == 1 && f.den()[0] == 1) return n;
  return "(" + n + ")/(" + detail::zpoly_q_string(f.den()) + ")";
}

inline std::string word_to_string(const Word& w, const Alphabet& alph) {
  if (w.empty()) return "1";
  std::string out;
  for (unsigned char l : w) {
    if (!out.empty()) out += " * ";
    out += alph.names[l];
  }
  return out;
}

// Canonical text form: terms deglex-descending, each "(coeff) * l1 * l2".
// Parsing the result reproduces the polynomial bit for bit.
inline std::string poly_to_string(const NCPoly<RatFunc>& p, const Alphabet& alph) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
    std::string term = "(" + coeff_to_q_string(it->second) + ")";
    for (unsigned char l : it->first) term += " * " + alph.names[l];
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out;
}

struct RelationFile {
  Alphabet alphabet;
  std::vector<NCPoly<RatFunc>> relations;
};

inline std::string relation_file_to_string(const RelationFile& rf) {
  std::string out = "alphabet:";
  for (size_t i = 0; i < rf.alphabet.names.size(); ++i)
    out += (i == 0 ? " " : " > ") + rf.alphabet.names[i];
  out += "\n";
  for (const auto& p : rf.relations) out += poly_to_string(p, rf.alphabet) + "\n";
  return out;
}

inline RelationFile parse_relations(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  RelationFile rf;
  bool have_alphabet = false;
  while (std::getline(in, line)) {
    std::string t = detail::trim_copy(line);
    if (t.empty()) continue;
    if (!have_alphabet) {
      if (t.rfind("alphabet:", 0) != 0)
        fail(errc::validation, "relation file: first line must start with 'alphabet:'");
      std::string rest = t.substr(9);
      size_t pos = 0;
      while (pos <= rest.size()) {
        size_t gt = rest.find('>', pos);
        std::string name = detail::trim_copy(
            gt == std::string::npos ? rest.substr(pos) : rest.substr(pos, gt - pos));
        if (name.empty()) fail(errc::validation, "relation file: empty letter name");
        if (rf.alphabet.index_of(name) >= 0)
          fail(errc::validation, "relation file: duplicate letter '" + name + "'");
        rf.alphabet.names.push_back(name);
        if (gt == std::string::npos) break;
        pos = gt + 1;
      }
      have_alphabet = true;
      continue;
    }
    NCPoly<RatFunc> p;
    for (const auto& [sign, term] : detail::split_terms(t))
      detail::parse_term(term, sign, rf.alphabet, p);
    if (p.is_zero()) fail(errc::validation, "relation file: relation line reduces to zero");
    rf.relations.push_back(std::move(p));
  }
  if (!have_alphabet) fail(errc::validation, "relation file: missing alphabet line");
  return rf;
}

}  // namespace qdha
