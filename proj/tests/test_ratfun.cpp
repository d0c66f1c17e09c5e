#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "yang/linrat.hpp"
#include "yang/poly.hpp"
#include "yang/qmat.hpp"
#include "yang/qrat.hpp"
#include "yang/series.hpp"

using namespace yang;

TEST_CASE("rational helpers") {
  CHECK(parse_rat("3/4") == Rat(3, 4));
  CHECK(parse_rat("-5") == Rat(-5));
  CHECK(rat_str(Rat(-7, 2)) == "-7/2");
  CHECK_THROWS_AS(parse_rat("a"), ParseError);
  CHECK_THROWS_AS(parse_rat("1/0"), ParseError);
  CHECK(binom(Rat(5), 2) == 10);
  CHECK(binom(Rat(-1), 3) == -1);
  CHECK(binom(Rat(1, 2), 2) == Rat(-1, 8));
  CHECK(binom(Rat(4), 0) == 1);
}

TEST_CASE("poly arithmetic and division") {
  Poly p = Poly::from_coeffs({Rat(-1), Rat(0), Rat(0), Rat(0), Rat(1)});  // u^4-1
  Poly d = Poly::from_coeffs({Rat(1), Rat(0), Rat(1)});                   // u^2+1
  auto [q, r] = p.divmod(d);
  CHECK(q == Poly::from_coeffs({Rat(-1), Rat(0), Rat(1)}));
  CHECK(r.is_zero());
  CHECK(p.divided_by(d) == q);
  CHECK_THROWS_AS(p.divided_by(Poly::linear(Rat(2))), VerificationError);
  CHECK(p.eval(Rat(2)) == 15);
}

TEST_CASE("poly taylor shift and roots") {
  Poly p = Poly::u() * Poly::u();
  CHECK(p.taylor_shift(Rat(3)) ==
        Poly::from_coeffs({Rat(9), Rat(6), Rat(1)}));
  Poly q = Poly::from_roots({Rat(1, 2), Rat(1, 2), Rat(-3), Rat(0)}) * Rat(6);
  auto [roots, rest] = q.rational_roots();
  CHECK(roots == std::map<Rat, int>{{Rat(1, 2), 2}, {Rat(-3), 1}, {Rat(0), 1}});
  CHECK(rest == Poly(Rat(6)));
  Poly no_rat = Poly::from_coeffs({Rat(-2), Rat(0), Rat(1)});  // u^2-2
  auto [r2, rest2] = no_rat.rational_roots();
  CHECK(r2.empty());
  CHECK(rest2 == no_rat);
}

TEST_CASE("poly interpolation") {
  Poly p = Poly::interpolate({{Rat(0), Rat(1)}, {Rat(1), Rat(2)}, {Rat(2), Rat(5)}});
  CHECK(p == Poly::from_coeffs({Rat(1), Rat(0), Rat(1)}));
  CHECK(Poly::interpolate({{Rat(3), Rat(7)}}) == Poly(Rat(7)));
}

TEST_CASE("linrat group laws") {
  LinRat f = LinRat::linear(Rat(1));
  CHECK(f * f.inverse() == LinRat::one());
  LinRat g = LinRat::parse("(u-3)(u-9)/(u*(u-2))");
  CHECK(g * g.inverse() == LinRat::one());
  CHECK(g / g == LinRat::one());
  CHECK(g.pow(3) == g * g * g);
  CHECK(g.pow(0) == LinRat::one());
  CHECK(g.degree() == 0);
  CHECK(g.num_degree() == 2);
  CHECK(g.den_degree() == 2);
}

TEST_CASE("linrat shift matches tau") {
  // shift_3 of (u-a) is (u-(a+3)): tau_3 on a Psi component.
  for (Rat a : {Rat(1, 2), Rat(-4), Rat(0)})
    CHECK(LinRat::linear(a).shifted(Rat(3)) == LinRat::linear(a + 3));
  LinRat g = LinRat::parse("(u-1)/(u+2)^2");
  CHECK(g.shifted(Rat(-1, 2)) == LinRat::parse("(u-1/2)/(u+5/2)^2"));
}

TEST_CASE("linrat eval") {
  LinRat g = LinRat::parse("(u-3)(u-9)/(u*(u-2))");
  CHECK(g.eval(Rat(1)) == -16);
  CHECK(g.eval(Rat(3)) == 0);
  CHECK_THROWS_AS(g.eval(Rat(2)), VerificationError);
}

TEST_CASE("linrat monic and rational-root requirements") {
  Poly two_u = Poly::from_coeffs({Rat(-3), Rat(2)});  // 2u-3, not monic
  CHECK_THROWS_AS(LinRat::from_polys(two_u, Poly(Rat(1))), VerificationError);
  Poly irr = Poly::from_coeffs({Rat(-2), Rat(0), Rat(1)});  // u^2-2
  CHECK_THROWS_AS(LinRat::from_polys(irr, Poly(Rat(1))), VerificationError);
  Poly ok = Poly::from_roots({Rat(1), Rat(-1)});
  CHECK(LinRat::from_polys(ok, Poly(Rat(1))) == LinRat::parse("(u-1)(u+1)"));
}

TEST_CASE("linrat parse and print round-trips") {
  for (const char* s : {"1", "u", "(u-3)", "1/(u+1/2)^2", "(u-3)(u-9)/(u*(u-2))",
                        "(u-1/2)^2(u-9)/(u+2)", "1/(u-2)", "u^3/(u-1)^2"}) {
    LinRat f = LinRat::parse(s);
    CHECK(f.str() == s);
    CHECK(LinRat::parse(f.str()) == f);
  }
  // Alternate spellings normalize.
  CHECK(LinRat::parse("(u-3)*(u-9) / (u * (u-2))").str() ==
        "(u-3)(u-9)/(u*(u-2))");
  CHECK(LinRat::parse("(u-5)^-2").str() == "1/(u-5)^2");
  CHECK(LinRat::parse("((u-3))") == LinRat::linear(Rat(3)));
}

TEST_CASE("linrat parse rejections") {
  for (const char* s : {"2u", "(2*u-3)", "u+1", "(u-3", "(u-3)^", "x",
                        "(u-3)^99", "", "1/2"})
    CHECK_THROWS_AS(LinRat::parse(s), ParseError);
}

TEST_CASE("series window semantics") {
  LaurentSeries z(5);
  CHECK(z.is_zero());
  CHECK(z.lead() == -6);
  CHECK(z.coeff(-5) == 0);
  CHECK_THROWS_AS(z.coeff(-6), VerificationError);
  LaurentSeries s(1, 2, {Rat(1), Rat(-3), Rat(0), Rat(7)});  // u - 3 + 7u^-2
  CHECK(s.coeff(1) == 1);
  CHECK(s.coeff(-2) == 7);
  CHECK(s.coeff(100) == 0);
  CHECK_THROWS_AS(s.truncated(3), VerificationError);
  CHECK(s.truncated(0).order() == 0);
  CHECK(s.truncated(0).coeff(0) == -3);
}

TEST_CASE("series arithmetic never extends precision") {
  LaurentSeries a(0, 4, {Rat(1), Rat(2), Rat(3), Rat(4), Rat(5)});
  LaurentSeries b(0, 2, {Rat(1), Rat(-2), Rat(1)});
  CHECK((a + b).order() == 2);
  CHECK((a - a).is_zero());
  CHECK((a - a).order() == 4);
  // Product order: min(order_b - lead_a, order_a - lead_b).
  CHECK((a * b).order() == 2);
  LaurentSeries u1(1, 3, {Rat(1), Rat(0), Rat(0), Rat(0), Rat(0)});  // u
  CHECK((u1 * b).order() == 1);  // multiplying by u shifts the unknown tail up
  CHECK((u1 * b).coeff(1) == 1);
}

TEST_CASE("expand at infinity geometric oracle") {
  // 1/(u-a) = u^-1 + a u^-2 + a^2 u^-3 + ...
  for (Rat a : {Rat(5), Rat(-1, 2), Rat(0)}) {
    LaurentSeries s = expand_at_infinity(LinRat::linear(a).inverse(), 3);
    LaurentSeries oracle(-1, 3, {Rat(1), a, a * a});
    CHECK(s == oracle);
  }
  Rat a(7, 3);
  LaurentSeries s = expand_at_infinity(LinRat::linear(a).inverse(), 12);
  Rat pw(1);
  for (long k = 0; k <= 12 - 1; ++k, pw *= a) CHECK(s.coeff(-1 - k) == pw);
}

TEST_CASE("expand at infinity polynomial exact") {
  LaurentSeries s = expand_at_infinity(LinRat::linear(Rat(4)), 6);
  CHECK(s.lead() == 1);
  CHECK(s.coeff(1) == 1);
  CHECK(s.coeff(0) == -4);
  for (long p = -1; p >= -6; --p) CHECK(s.coeff(p) == 0);
}

TEST_CASE("expand leading coefficient is the unit") {
  // (u-b-1)/((u-b)(u-b+1)) has leading term u^-1.
  Rat b(4);
  LinRat f = LinRat::linear(b + 1) / (LinRat::linear(b) * LinRat::linear(b - 1));
  LaurentSeries s = expand_at_infinity(f, 5);
  CHECK(s.lead() == -1);
  CHECK(s.lead() == f.degree());
  CHECK(s.coeff(-1) == 1);
  for (const char* g : {"(u-3)(u-9)/(u*(u-2))", "(u+1/2)^-2", "u^3", "1"}) {
    LinRat h = LinRat::parse(g);
    LaurentSeries e = expand_at_infinity(h, 8);
    CHECK(e.lead() == h.degree());
    CHECK(e.coeff(h.degree()) == 1);
  }
  CHECK_THROWS_AS(expand_at_infinity(LinRat::parse("(u-1)^-3"), 2),
                  VerificationError);
}

TEST_CASE("principal part of g/(u-a)") {
  // <g(u)/(u-a)>_+ = g(a)/(u-a), checked coefficientwise.
  Poly g = Poly::from_coeffs({Rat(2), Rat(-1), Rat(1), Rat(3)});
  for (Rat a : {Rat(2), Rat(-1, 3)}) {
    QRat f = QRat::from(g, {{a, 1}});
    long order = 9;
    LaurentSeries lhs = f.at_infinity(order).principal_part();
    LaurentSeries rhs =
        expand_at_infinity(LinRat::linear(a).inverse(), order) * g.eval(a);
    CHECK(lhs == rhs);
    // And exactly, as rational functions.
    CHECK(f.proper_part() == QRat::from(Poly(g.eval(a)), {{a, 1}}));
  }
}

TEST_CASE("principal part of powers of u is zero") {
  Poly p(Rat(1));
  for (int m = 0; m <= 4; ++m, p = p * Poly::u()) {
    LaurentSeries s = expand_at_infinity(p, 5).principal_part();
    CHECK(s.is_zero());
    CHECK(s.order() == 5);
  }
}

TEST_CASE("principal part idempotent") {
  LaurentSeries s = expand_at_infinity(LinRat::parse("(u-3)(u-9)/(u*(u-2))"), 7);
  CHECK(s.principal_part().principal_part() == s.principal_part());
}

namespace {

Rat random_rat(std::mt19937_64& rng) {
  static const Rat pool[] = {Rat(-3), Rat(-1), Rat(0), Rat(1, 2), Rat(2)};
  return pool[rng() % 5];
}

Poly random_poly(std::mt19937_64& rng) {
  std::vector<Rat> c;
  long deg = rng() % 4;
  for (long k = 0; k <= deg; ++k)
    c.push_back(Rat(static_cast<long>(rng() % 9) - 4));
  return Poly::from_coeffs(std::move(c));
}

LinRat random_linrat(std::mt19937_64& rng) {
  LinRat f;
  for (int k = 0; k < 3; ++k) {
    int e = static_cast<int>(rng() % 5) - 2;
    f = f * LinRat::from_roots({{random_rat(rng), e}});
  }
  return f;
}

}  // namespace

TEST_CASE("truncation associativity property") {
  // <g <h f>_+>_+ = <g h f>_+ for polynomial g, h at order 12.
  std::mt19937_64 rng(20260814);
  const long order = 12, big = 40;
  for (int trial = 0; trial < 40; ++trial) {
    Poly g = random_poly(rng), h = random_poly(rng);
    LinRat f = random_linrat(rng);
    LaurentSeries sf = expand_at_infinity(f, big);
    LaurentSeries sg = expand_at_infinity(g, big);
    LaurentSeries sh = expand_at_infinity(h, big);
    LaurentSeries lhs =
        (sg * (sh * sf).principal_part()).principal_part().truncated(order);
    LaurentSeries rhs = (sg * sh * sf).principal_part().truncated(order);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("product of expansions round-trip") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 30; ++trial) {
    LinRat f = random_linrat(rng), g = random_linrat(rng);
    LaurentSeries prod = expand_at_infinity(f, 20) * expand_at_infinity(g, 20);
    CHECK(prod == expand_at_infinity(f * g, prod.order()));
  }
}

TEST_CASE("series inverse") {
  LinRat f = LinRat::parse("(u-2)(u+1)");
  LaurentSeries s = expand_at_infinity(f, 6);
  LaurentSeries t = s * s.inverse();
  CHECK(t == expand_at_infinity(LinRat::one(), t.order()));
  CHECK(s.inverse() == expand_at_infinity(f.inverse(), s.inverse().order()));
  CHECK_THROWS_AS(LaurentSeries(3).inverse(), VerificationError);
}

TEST_CASE("series printing") {
  LaurentSeries s(1, 2, {Rat(1), Rat(-3), Rat(0), Rat(7, 2)});
  CHECK(s.str() == "u - 3 + 7/2*u^-2 + O(u^-3)");
  CHECK(LaurentSeries(4).str() == "0 + O(u^-5)");
}

TEST_CASE("qrat arithmetic and reduction") {
  QRat f = QRat::from(Poly::from_roots({Rat(3), Rat(9)}), {{Rat(0), 1}, {Rat(2), 1}});
  CHECK(f.eval(Rat(1)) == -16);
  QRat g = QRat::from(Poly::from_roots({Rat(0)}), {{Rat(0), 1}, {Rat(2), 1}});
  CHECK(g.den_roots() == std::map<Rat, int>{{Rat(2), 1}});  // u cancels
  QRat sum = f + g;
  CHECK(sum.eval(Rat(1)) == -16 + Rat(1) / (1 - 2));
  QRat prod = f * g;
  CHECK(prod.eval(Rat(1)) == 16);
  QRat quot = f / g;
  CHECK(quot.eval(Rat(1)) == 16);
  CHECK(f - f == QRat());
  CHECK((f * Rat(0)).is_zero());
  QRat irr_div(Poly::from_coeffs({Rat(1), Rat(0), Rat(1)}));
  CHECK_THROWS_AS(f / irr_div, VerificationError);
  CHECK_THROWS_AS(f / QRat(), VerificationError);
  CHECK_THROWS_AS(f.eval(Rat(2)), VerificationError);
}

TEST_CASE("qrat proper and polynomial parts") {
  QRat f = QRat::from(Poly::from_coeffs({Rat(1), Rat(0), Rat(0), Rat(1)}),
                      {{Rat(2), 1}});  // (u^3+1)/(u-2)
  CHECK(f.polynomial_part() == Poly::from_coeffs({Rat(4), Rat(2), Rat(1)}));
  CHECK(f.proper_part() == QRat::from(Poly(Rat(9)), {{Rat(2), 1}}));
  CHECK(f == QRat(f.polynomial_part()) + f.proper_part());
  // The proper part is the principal part of the expansion at infinity.
  LaurentSeries pp = f.at_infinity(10).principal_part();
  CHECK(pp == f.proper_part().at_infinity(10));
}

TEST_CASE("qrat expansion matches linrat expansion") {
  LinRat f = LinRat::parse("(u-3)(u-9)/(u*(u-2))");
  CHECK(QRat(f).at_infinity(8) == expand_at_infinity(f, 8));
  auto [scale, shape] = (QRat(f) * Rat(-5, 3)).as_scaled_linrat();
  CHECK(scale == Rat(-5, 3));
  CHECK(shape == f);
  QRat z;
  auto [zs, zf] = z.as_scaled_linrat();
  CHECK(zs == 0);
  CHECK_THROWS_AS(QRat(Poly::from_coeffs({Rat(1), Rat(0), Rat(1)})).as_scaled_linrat(),
                  VerificationError);
}

TEST_CASE("qrat printing") {
  CHECK(QRat().str() == "0");
  CHECK(QRat(Rat(-7, 2)).str() == "-7/2");
  QRat f = QRat::from(Poly::from_roots({Rat(3)}) * Rat(2), {{Rat(1), 2}});
  CHECK(f.str() == "2*(u-3)/(u-1)^2");
  QRat g = QRat::from(Poly::from_coeffs({Rat(1), Rat(0), Rat(1)}), {{Rat(0), 1}});
  CHECK(g.str() == "(u^2 + 1)/u");
}

TEST_CASE("qmat elimination") {
  QMat a(2, 3);
  a.at(0, 0) = 1; a.at(0, 1) = 2; a.at(0, 2) = 3;
  a.at(1, 0) = 2; a.at(1, 1) = 4; a.at(1, 2) = 6;
  CHECK(a.rank() == 1);
  auto ker = a.kernel();
  CHECK(ker.size() == 2);
  for (const auto& v : ker) {
    QVec av = a * v;
    CHECK(std::all_of(av.begin(), av.end(), [](const Rat& x) { return x == 0; }));
  }
  QMat b(2, 2);
  b.at(0, 0) = 1; b.at(0, 1) = 1;
  b.at(1, 0) = 1; b.at(1, 1) = -1;
  auto x = b.solve({Rat(3), Rat(1)});
  REQUIRE(x.has_value());
  CHECK(*x == QVec{Rat(2), Rat(1)});
  QMat c(2, 2);
  c.at(0, 0) = 1; c.at(0, 1) = 1;
  c.at(1, 0) = 1; c.at(1, 1) = 1;
  CHECK(!c.solve({Rat(0), Rat(1)}).has_value());
}

TEST_CASE("qmat charpoly") {
  QMat a(2, 2);
  a.at(0, 0) = 2; a.at(0, 1) = 1; a.at(1, 1) = 3;
  CHECK(a.charpoly() == Poly::from_roots({Rat(2), Rat(3)}));
  // Companion matrix of u^3 - 2u + 1.
  QMat comp(3, 3);
  comp.at(1, 0) = 1; comp.at(2, 1) = 1;
  comp.at(0, 2) = -1; comp.at(1, 2) = 2; comp.at(2, 2) = 0;
  CHECK(comp.charpoly() == Poly::from_coeffs({Rat(1), Rat(-2), Rat(0), Rat(1)}));
  CHECK(QMat::identity(4).charpoly() == Poly::from_roots({Rat(1), Rat(1), Rat(1), Rat(1)}));
}

TEST_CASE("row space bookkeeping") {
  RowSpace rs(3);
  CHECK(rs.add({Rat(1), Rat(2), Rat(3)}));
  CHECK(!rs.add({Rat(2), Rat(4), Rat(6)}));
  CHECK(rs.add({Rat(0), Rat(1), Rat(1)}));
  CHECK(rs.dim() == 2);
  CHECK(rs.contains({Rat(1), Rat(1), Rat(2)}));
  CHECK(!rs.contains({Rat(0), Rat(0), Rat(1)}));
  CHECK(!rs.add({Rat(1), Rat(0), Rat(1)}));  // already in the span
  CHECK(rs.add({Rat(0), Rat(0), Rat(1)}));
  CHECK(rs.dim() == 3);
  CHECK(rs.contains({Rat(5), Rat(-7), Rat(13, 2)}));
}

TEST_CASE("series from prefundamental xi shape") {
  // xi(u) v_0 = (u-b-1)/((u-b-1)(u-b)) v_0 = 1/(u-b) v_0 at i=0: lead u^-1.
  Rat b(5, 2);
  QRat xi = QRat::from(Poly::linear(b + 1),
                       {{b + 1, 1}, {b, 1}});
  CHECK(xi.den_roots() == std::map<Rat, int>{{b, 1}});
  CHECK(xi.at_infinity(4).lead() == -1);
}
