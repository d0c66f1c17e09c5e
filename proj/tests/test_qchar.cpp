#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "yang/factorize.hpp"
#include "yang/qchar.hpp"

using namespace yang;

namespace {

const CartanData& a1() {
  static CartanData cd = cartan("A1");
  return cd;
}

Rat half(long n) { return Rat(n) / 2; }

AInvMonomial mono(std::initializer_list<std::pair<Rat, int>> factors) {
  AInvMonomial m;
  for (const auto& [a, v] : factors) m[{0, a}] += v;
  return m;
}

LinRat lin(const Rat& a) { return LinRat::linear(a); }

Weight w1(const Rat& c) {
  Weight w(1);
  w.c[0] = c;
  return w;
}

}  // namespace

TEST_CASE("monomials and the unit character") {
  CHECK(monomial_size({}) == 0);
  CHECK(monomial_size(mono({{0, 1}, {2, 3}})) == 4);

  LWeight top = LWeight::from_components({lin(5)});
  CHECK(monomial_lweight(a1(), top, {}) == top);
  CHECK(monomial_lweight(a1(), top, mono({{2, 1}})) ==
        top * gen_A(a1(), 0, 2).inverse());
  CHECK(monomial_lweight(a1(), top, mono({{2, 2}})) ==
        top * gen_A(a1(), 0, 2).pow(-2));

  QCharacter unit(top, 6);
  CHECK(unit.depth() == 6);
  CHECK(unit.terms().size() == 1);
  CHECK(unit.term({}) == 1);
  CHECK(unit.term(mono({{0, 1}})) == 0);
}

TEST_CASE("chain closed forms") {
  // L_b^a with b - a = 2: exactly three terms, stopping at A_{a+1}.
  QCharacter x = qc_L_finite(1, 3, 8);
  CHECK(x.terms().size() == 3);
  CHECK(x.term({}) == 1);
  CHECK(x.term(mono({{3, 1}})) == 1);
  CHECK(x.term(mono({{3, 1}, {2, 1}})) == 1);
  CHECK(x.top() == LWeight::from_components({lin(1) / lin(3)}));

  // One-dimensional: b = a.
  CHECK(qc_L_finite(2, 2, 5).terms().size() == 1);

  CHECK_THROWS_AS(qc_L_finite(0, half(1), 4), VerificationError);

  // Positive prefundamental: a single term.
  QCharacter lp = qc_Lplus(half(7), 5);
  CHECK(lp.terms().size() == 1);
  CHECK(lp.top() == LWeight::from_components({lin(half(7))}));

  // Negative prefundamental at depth 4: five terms.
  QCharacter lm = qc_Lminus(2, 4);
  CHECK(lm.terms().size() == 5);
  CHECK(lm.top() == LWeight::from_components({lin(2).inverse()}));
  CHECK(lm.term(mono({{2, 1}, {1, 1}, {0, 1}})) == 1);
  CHECK(lm.term(mono({{2, 1}, {1, 1}, {0, 1}, {-1, 1}})) == 1);

  // frakL chain ignores b - a natural and runs to depth.
  CHECK(qc_frakL(1, 3, 8).terms().size() == 9);
  CHECK(qc_frakL(0, half(1), 3).terms().size() == 4);
}

TEST_CASE("frakL splits as Lplus times Lminus") {
  for (auto [a, b] : std::vector<std::pair<Rat, Rat>>{
           {1, 3}, {0, half(1)}, {half(-3), half(5)}, {4, 0}})
    CHECK(qc_frakL(a, b, 6) == qc_Lplus(a, 6) * qc_Lminus(b, 6));
}

TEST_CASE("N is the two-term Kirillov-Reshetikhin chain") {
  for (Rat a : {Rat(0), half(5)}) {
    QCharacter n = qc_N(a1(), 0, a, 4);
    CHECK(n == qc_L_finite(a - 1, a, 4));
    CHECK(n.top() == gen_Y(a1(), 0, a - half(1)));
  }

  // General type: top picks up Psi factors on neighbouring nodes and the
  // character has two weights separated by alpha_1.
  CartanData b2 = cartan("B2");
  QCharacter n = qc_N(b2, 0, 3, 4);
  CHECK(n.top() == gen_Y(b2, 0, 2) * psi(b2, 1, 4));
  CHECK(n.terms().size() == 2);
  std::map<Weight, long> chi = n.character(b2);
  REQUIRE(chi.size() == 2);
  Weight top_w = n.top().weight(b2);
  Weight alpha1(2);
  alpha1.c = {2, -2};
  CHECK(chi.at(top_w) == 1);
  CHECK(chi.at(top_w - alpha1) == 1);

  CartanData g2 = cartan("G2");
  QCharacter ng = qc_N(g2, 1, half(1), 3);
  CHECK(ng.top() == gen_Y(g2, 1, half(1) - half(1)) * psi(g2, 0, 2));
  CHECK(ng.terms().size() == 2);
}

TEST_CASE("products convolve terms and multiply tops") {
  QCharacter n = qc_N(a1(), 0, 0, 6).normalized();
  QCharacter sq = n * n;
  CHECK(sq.term({}) == 1);
  CHECK(sq.term(mono({{0, 1}})) == 2);
  CHECK(sq.term(mono({{0, 2}})) == 1);
  CHECK(sq.terms().size() == 3);

  // Unit law and depth minimum.
  QCharacter x = qc_Lminus(3, 5);
  CHECK(x * QCharacter(LWeight(1), 5) == x);
  CHECK((qc_Lminus(3, 9) * QCharacter(LWeight(1), 5)).depth() == 5);
  CHECK(qc_Lminus(3, 9).truncated(5) == x.truncated(5));
  CHECK_THROWS_AS(x.truncated(6), VerificationError);

  // 2 (x) 2 at adjacent points: character of the 3 (+) 1 decomposition.
  std::map<Weight, long> chi =
      (qc_L_finite(0, 1, 4) * qc_L_finite(1, 2, 4)).character(a1());
  std::map<Weight, long> expect{{w1(2), 1}, {w1(0), 2}, {w1(-2), 1}};
  CHECK(chi == expect);
}

TEST_CASE("Kirillov-Reshetikhin modules") {
  CHECK(qc_KR(3, half(1), 6) == qc_L_finite(half(1) - 3, half(1), 6));
  CHECK(qc_KR(0, 4, 3).terms().size() == 1);
  CHECK_THROWS_AS(qc_KR(-1, 0, 3), VerificationError);
  // Below the truncation horizon KR and L^- chains agree.
  CHECK(qc_KR(8, 2, 5).normalized() == qc_Lminus(2, 5).normalized());
}

TEST_CASE("simple q-characters via standard factorization") {
  LinRat e = lin(9) * lin(3) / (lin(0) * lin(2));
  QCharacter x = qc_simple_sl2(e, 7);
  CHECK(x.top() == LWeight::from_components({e}));
  CHECK(x == qc_Lplus(9, 7) * qc_Lplus(3, 7) * qc_Lminus(0, 7) *
                 qc_Lminus(2, 7));

  LinRat f = lin(3) * lin(9) * lin(5) / (lin(6) * lin(0) * lin(2));
  CHECK(qc_simple_sl2(f, 6) ==
        qc_Lplus(9, 6) * qc_Lplus(3, 6) * qc_L_finite(5, 6, 6) *
            qc_Lminus(0, 6) * qc_Lminus(2, 6));

  CHECK(qc_simple_sl2(LinRat::one(), 5).terms().size() == 1);
}

TEST_CASE("character product formula for prefundamentals") {
  for (Rat a : {Rat(0), half(5), Rat(-3)})
    CHECK(product_character_check(a1(), 0, a, 8));
  CHECK_THROWS_AS(product_character_check(cartan("B2"), 0, 0, 4),
                  VerificationError);

  // chi(L^+_a) is the single weight -a.
  std::map<Weight, long> chi = qc_Lplus(half(5), 5).character(a1());
  std::map<Weight, long> expect{{w1(half(-5)), 1}};
  CHECK(chi == expect);
}

TEST_CASE("Jordan-Holder peeling") {
  using JH = std::map<LinRat, long>;

  // Irreducible tensor of two infinite-dimensional simples.
  LinRat e = lin(9) * lin(3) / (lin(0) * lin(2));
  auto jh = jordan_holder_sl2(qc_frakL(9, 0, 10) * qc_frakL(3, 2, 10), 10);
  REQUIRE(jh.has_value());
  CHECK(*jh == JH{{e, 1}});

  // The trivial module.
  auto triv = jordan_holder_sl2(QCharacter(LWeight(1), 5), 5);
  REQUIRE(triv.has_value());
  CHECK(*triv == JH{{LinRat::one(), 1}});

  // L^+_b (x) L^-_b has length two.
  auto pm = jordan_holder_sl2(qc_Lplus(2, 6) * qc_Lminus(2, 6), 6);
  REQUIRE(pm.has_value());
  CHECK(*pm == JH{{LinRat::one(), 1}, {lin(3) / lin(1), 1}});

  // A simple q-character peels to itself.
  for (const LinRat& s :
       {e, lin(5) / lin(6), LinRat::one(), lin(0).inverse()}) {
    auto self = jordan_holder_sl2(qc_simple_sl2(s, 8), 8);
    REQUIRE(self.has_value());
    CHECK(*self == JH{{s, 1}});
  }

  // 2 (x) 2 at adjacent points: 3 (+) 1.
  auto adj = jordan_holder_sl2(qc_L_finite(0, 1, 8) * qc_L_finite(1, 2, 8), 8);
  REQUIRE(adj.has_value());
  CHECK(*adj == JH{{lin(0) / lin(2), 1}, {LinRat::one(), 1}});
}

TEST_CASE("factorization standardness matches length-one decompositions") {
  // Standard data: single class of multiplicity one.
  QCharacter std_prod = qc_Lplus(3, 8) * qc_Lplus(9, 8) *
                        qc_L_finite(5, 6, 8) * qc_Lminus(0, 8) *
                        qc_Lminus(2, 8);
  StandardFactorization sf;
  sf.positive = {3, 9};
  sf.kr_pairs = {{5, 6}};
  sf.negative = {0, 2};
  CHECK(sf.is_standard());
  auto jh = jordan_holder_sl2(std_prod, 8);
  REQUIRE(jh.has_value());
  CHECK(jh->size() == 1);
  CHECK(jh->begin()->second == 1);

  // Non-standard x = 0, w = 2: length two with the expected classes.
  StandardFactorization bad;
  bad.positive = {0};
  bad.negative = {2};
  CHECK_FALSE(bad.is_standard());
  auto split = jordan_holder_sl2(qc_Lplus(0, 8) * qc_Lminus(2, 8), 8);
  REQUIRE(split.has_value());
  std::map<LinRat, long> expect{{lin(0) / lin(2), 1}, {lin(3) / lin(-1), 1}};
  CHECK(*split == expect);

  // Non-standard interleaved KR pairs: length greater than one.
  StandardFactorization inter;
  inter.kr_pairs = {{0, 2}, {1, 3}};
  CHECK_FALSE(inter.is_standard());
  auto jh2 = jordan_holder_sl2(qc_L_finite(0, 2, 8) * qc_L_finite(1, 3, 8), 8);
  REQUIRE(jh2.has_value());
  CHECK(jh2->size() > 1);
  long total = 0;
  for (const auto& [cls, m] : *jh2) {
    CHECK(m > 0);
    total += m;
  }
  CHECK(total == 2);
}

TEST_CASE("Jordan-Holder edge conditions") {
  // A peel at the truncation depth is inconclusive.
  QCharacter boundary(LWeight(1), 2);
  boundary.add_term(mono({{0, 2}}), 1);
  CHECK_FALSE(jordan_holder_sl2(boundary, 2).has_value());

  // A negative multiplicity can never come from a product of simples.
  QCharacter neg(LWeight(1), 3);
  neg.add_term(mono({{0, 1}}), -1);
  CHECK_THROWS_AS(jordan_holder_sl2(neg, 3), VerificationError);

  // Truncating the depth of a conclusive instance stays conclusive as long
  // as no peel happens at the boundary.
  auto jh = jordan_holder_sl2(qc_L_finite(0, 9, 12), 5);
  REQUIRE(jh.has_value());
  CHECK(*jh == std::map<LinRat, long>{{lin(0) / lin(9), 1}});
}
