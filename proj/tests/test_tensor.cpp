#include <map>
#include <string>
#include <vector>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "yang/cartan.hpp"
#include "yang/modules_sl2.hpp"
#include "yang/qchar.hpp"
#include "yang/qrat.hpp"
#include "yang/tensor.hpp"

using namespace yang;

namespace {

Rat rq(long p, long q = 1) { return Rat(p) / Rat(q); }

// Mode n of a rational entry: the coefficient of u^{-n-1}.
Rat mode_of(const QRat& f, long n) {
  return f.at_infinity(std::max(n + 2, 2L)).coeff(-n - 1);
}

Rat entry(const ActColumn& c, long row) {
  auto it = c.v.find(row);
  return it == c.v.end() ? Rat(0) : it->second;
}

bool is_unit_multiple(const ActColumn& c, long row, const Rat& s) {
  if (c.poisoned) return false;
  if (s == Rat(0)) return c.v.empty();
  return c.v.size() == 1 && entry(c, row) == s;
}

}  // namespace

TEST_CASE("one-dimensional twist by s = 1 is the identity") {
  const ModuleRealization v = make_n(rq(5, 2), 1);
  for (TensorSide side : {TensorSide::Left, TensorSide::Right}) {
    const ModuleRealization t = tensor_onedim(LinRat::one(), v, side);
    CHECK(t.shift() == v.shift());
    CHECK(t.top() == v.top());
    CHECK(t.dim() == v.dim());
    for (long i = 0; i < v.dim(); ++i)
      CHECK(t.vec(i).weight == v.vec(i).weight);
    for (GenKind k : {GenKind::XPlus, GenKind::XMinus, GenKind::Xi})
      for (long n = -2; n <= 6; ++n)
        for (long c = 0; c < v.dim(); ++c) CHECK(t.act(k, n, c) == v.act(k, n, c));
  }
}

TEST_CASE("one-dimensional twist rejects non-polynomial s") {
  CHECK_THROWS_AS(tensor_onedim(LinRat::parse("1/(u-2)"), make_n(rq(1), 1),
                                TensorSide::Left),
                  VerificationError);
}

TEST_CASE("right twist of Lminus(b) by u - b against the principal-part oracle") {
  const Rat b = rq(2);
  const ModuleRealization v = make_lminus(b, 3);
  const ModuleRealization t = tensor_onedim(LinRat::linear(b), v, TensorSide::Right);

  CHECK(t.shift() == 0);
  CHECK(t.top() == LinRat::one());
  CHECK(t.index_cap() == v.index_cap());

  // Twisted lowering entries: <(u-b) (i+1)/(u-b+i)>_+ = -i(i+1)/(u-b+i).
  for (long i = 0; i + 1 < v.dim(); ++i) {
    const QRat direct =
        (QRat(Poly::linear(b)) * QRat::from(Poly(Rat(i + 1)), {{b - i, 1}}))
            .proper_part();
    for (long n = 0; n <= 4; ++n)
      CHECK(is_unit_multiple(t.act(GenKind::XMinus, n, i), i + 1,
                             mode_of(direct, n)));
  }
  // Frozen values at b = 2: column 0 dies, column 1 maps to -2 v_2 at every
  // mode (root b-1 = 1), column 2 only at mode 0 (root 0).
  for (long n = 0; n <= 4; ++n) {
    CHECK(t.act(GenKind::XMinus, n, 0).is_zero());
    CHECK(is_unit_multiple(t.act(GenKind::XMinus, n, 1), 2, rq(-2)));
  }
  CHECK(is_unit_multiple(t.act(GenKind::XMinus, 0, 2), 3, rq(-6)));
  CHECK(t.act(GenKind::XMinus, 1, 2).is_zero());
  CHECK(t.act(GenKind::XMinus, 2, 2).is_zero());

  // xi is multiplied outright: column 0 becomes the unit series, column 1
  // becomes (u-b-1)/(u-b+1) with modes -2 (b-1)^p = -2.
  CHECK(is_unit_multiple(t.act(GenKind::Xi, -1, 0), 0, rq(1)));
  for (long p = 0; p <= 4; ++p) {
    CHECK(t.act(GenKind::Xi, p, 0).is_zero());
    CHECK(is_unit_multiple(t.act(GenKind::Xi, p, 1), 1, rq(-2)));
  }
  // Raising side untouched; the depth-edge poison survives the twist.
  for (long n = 0; n <= 4; ++n)
    for (long c = 0; c < v.dim(); ++c)
      CHECK(t.act(GenKind::XPlus, n, c) == v.act(GenKind::XPlus, n, c));
  CHECK(t.act(GenKind::XMinus, 0, 3).poisoned);

  CHECK(verify_relations(t, 6).passed());
  CHECK(lweight_decomposition(t, 10) == qc_Lplus(b, 3) * qc_Lminus(b, 3));
}

TEST_CASE("left twist of N(a) by u - a splits into the outer one-dimensional classes") {
  const Rat a = rq(3);
  const ModuleRealization v = make_n(a, 1);
  const ModuleRealization t = tensor_onedim(LinRat::linear(a), v, TensorSide::Left);

  CHECK(t.shift() == 1);
  CHECK(t.top() == LinRat::linear(rq(2)));
  // <(u-a) x^+(u)>_+ kills the only raising entry 1/(u-a).
  for (long n = 0; n <= 5; ++n) CHECK(t.act(GenKind::XPlus, n, 1).is_zero());
  for (long n = 0; n <= 5; ++n)
    CHECK(t.act(GenKind::XMinus, n, 0) == v.act(GenKind::XMinus, n, 0));
  // l-weights u-2 and u-4: the short exact sequence's outer classes.
  CHECK(lweight_decomposition(t, 8) ==
        qc_Lplus(a, 1) * qc_N(cartan("A1"), 0, a, 1));
  CHECK(verify_relations(t, 6).passed());

  // Twisted series tables transfer: the composite still spectral-shifts.
  const ModuleRealization s = spectral_shift(t, rq(4));
  CHECK(s.top() == LinRat::linear(rq(6)));
  CHECK(lweight_decomposition(s, 8) ==
        qc_Lplus(rq(7), 1) * qc_N(cartan("A1"), 0, rq(7), 1));
}

TEST_CASE("left twist keeps a truncated chain exact under the relations") {
  const ModuleRealization v = make_frakl(rq(1, 3), rq(3), 3);
  const ModuleRealization t =
      tensor_onedim(LinRat::linear(rq(1)), v, TensorSide::Left);
  const RelationReport rep = verify_relations(t, 6);
  CHECK(rep.passed());
  CHECK(rep.skipped > 0);  // depth-edge poison is preserved
  CHECK(lweight_decomposition(t, 12) ==
        qc_Lplus(rq(1), 3) * qc_frakL(rq(1, 3), rq(3), 3));
}

TEST_CASE("tensor_Y0 rejects shifted factors") {
  CHECK_THROWS_AS(tensor_Y0(make_lminus(rq(0), 2), make_n(rq(1), 1)),
                  VerificationError);
  CHECK_THROWS_AS(tensor_Y0(make_n(rq(1), 1), make_lplus(rq(0), 0)),
                  VerificationError);
}

TEST_CASE("tensor_Y0 of two fundamental-flavor modules") {
  const Rat a = rq(1), b = rq(5);
  const ModuleRealization v = make_n(a, 1), w = make_n(b, 1);
  const ModuleRealization t = tensor_Y0(v, w);

  CHECK(t.shift() == 0);
  CHECK(t.dim() == 4);
  CHECK(t.depth() == 2);
  CHECK(t.top() == v.top() * w.top());
  CHECK(t.index_cap().has_value());
  CHECK(*t.index_cap() == 12);

  // Weights and depths add on pure tensors.
  for (long i = 0; i < 2; ++i)
    for (long j = 0; j < 2; ++j) {
      const BasisVec& p = t.vec(i * 2 + j);
      CHECK(p.weight == v.vec(i).weight + w.vec(j).weight);
      CHECK(p.depth == v.vec(i).depth + w.vec(j).depth);
    }

  // Top xi eigenvalue (u-a+1)(u-b+1)/((u-a)(u-b)), all modes exact.
  const QRat top = QRat::from(Poly::from_roots({a - 1, b - 1}),
                              {{a, 1}, {b, 1}});
  CHECK(is_unit_multiple(t.act(GenKind::Xi, -1, 0), 0, rq(1)));
  CHECK(t.act(GenKind::Xi, -2, 0).is_zero());
  for (long p = 0; p <= 8; ++p)
    CHECK(is_unit_multiple(t.act(GenKind::Xi, p, 0), 0, mode_of(top, p)));

  // Drinfeld relations hold as matrix identities through the cap.
  const RelationReport rep = verify_relations(t, 6);
  CHECK(rep.passed());
  CHECK(rep.skipped == 0);

  // q-character multiplicativity.
  const CartanData cd = cartan("A1");
  CHECK(lweight_decomposition(t, 10) ==
        qc_N(cd, 0, a, 2) * qc_N(cd, 0, b, 2));

  // Beyond the cap the recursion reports poison instead of guessing.
  CHECK(t.act(GenKind::XPlus, 13, 0).poisoned);
  CHECK(t.act(GenKind::Xi, 13, 0).poisoned);
  CHECK(t.act(GenKind::XPlus, -1, 0).is_zero());
}

TEST_CASE("tensor_Y0 of a length-four chain with a two-dimensional factor") {
  const ModuleRealization v = make_l_finite(rq(0), rq(3), 3);
  const ModuleRealization w = make_n(rq(7), 1);
  const ModuleRealization t = tensor_Y0(v, w);
  CHECK(t.dim() == 8);
  CHECK(t.depth() == 4);
  CHECK(verify_relations(t, 5).passed());
  const CartanData cd = cartan("A1");
  CHECK(lweight_decomposition(t, 12) ==
        qc_L_finite(rq(0), rq(3), 4) * qc_N(cd, 0, rq(7), 4));
}

TEST_CASE("make_tensor wires the four modes") {
  const ModuleRealization n1 = make_n(rq(1), 1);
  const ModuleRealization one = make_lplus(rq(4), 0);

  const TensorRealization h = make_tensor(n1, make_n(rq(5), 1), TensorMode::HopfY0);
  CHECK(h.mode == TensorMode::HopfY0);
  CHECK(h.composite.dim() == 4);
  CHECK(h.pair_index(1, 1) == 3);

  const TensorRealization l = make_tensor(one, n1, TensorMode::OneDimLeft);
  CHECK(l.composite.dim() == 2);
  CHECK(l.composite.shift() == 1);
  CHECK(l.composite.top() == LinRat::linear(rq(4)) * n1.top());

  const TensorRealization r = make_tensor(n1, one, TensorMode::OneDimRight);
  CHECK(r.composite.dim() == 2);
  for (long n = 0; n <= 4; ++n)
    CHECK(r.composite.act(GenKind::XPlus, n, 1) == n1.act(GenKind::XPlus, n, 1));

  const TensorRealization e =
      make_tensor(n1, make_lminus(rq(0), 2), TensorMode::ExtremeOnly);
  CHECK(e.composite.dim() == 0);

  CHECK_THROWS_AS(make_tensor(n1, n1, TensorMode::OneDimLeft), VerificationError);
}

TEST_CASE("extreme actions reproduce the fundamental-negative display") {
  const Rat a = rq(3), b = rq(1);
  const ModuleRealization v = make_n(a, 1);
  const ModuleRealization w = make_lminus(b, 3);
  const ExtremeActions ea = extreme_actions(v, w);
  CHECK(ea.lowest_col() == 1);
  CHECK(ea.highest_col() == 0);
  const long stride = w.dim();

  // x^-_n (e_1 (x) omega) = b^n e_1 (x) v_1 + mode_n(1/((u-a)(u-b))) e_2 (x) omega.
  const QRat cross = QRat::from(Poly(Rat(1)), {{a, 1}, {b, 1}});
  for (long n = 0; n <= 5; ++n) {
    const ActColumn c = ea.xminus_on_highest(n, {{0, rq(1)}});
    CHECK_FALSE(c.poisoned);
    CHECK(entry(c, 0 * stride + 1) == rq(1));  // b = 1
    CHECK(entry(c, 1 * stride + 0) == mode_of(cross, n));
    CHECK(c.v.size() == (n == 0 ? 1u : 2u));
  }
  // Frozen: mode 2 cross coefficient a + b = 4; mode 3: a^2 + ab + b^2 = 13.
  CHECK(entry(ea.xminus_on_highest(2, {{0, rq(1)}}), stride) == rq(4));
  CHECK(entry(ea.xminus_on_highest(3, {{0, rq(1)}}), stride) == rq(13));

  // On the lowest leg, xi is the product series and x^- passes through.
  const QRat low_top = QRat::from(Poly(Rat(1)), {{b, 1}}) *
                       QRat::from(Poly::linear(a + 1), {{a, 1}});
  for (long p = 0; p <= 5; ++p)
    CHECK(is_unit_multiple(ea.xi_on_lowest(p, 0), stride, mode_of(low_top, p)));
  const QRat low_v1 = QRat::from(Poly::linear(b + 1), {{b, 1}, {b - 1, 1}}) *
                      QRat::from(Poly::linear(a + 1), {{a, 1}});
  for (long p = 0; p <= 5; ++p)
    CHECK(is_unit_multiple(ea.xi_on_lowest(p, 1), stride + 1, mode_of(low_v1, p)));
  for (long n = 0; n <= 4; ++n)
    for (long j = 0; j + 1 < w.dim(); ++j)
      CHECK(entry(ea.xminus_on_lowest(n, j), stride + j + 1) ==
            entry(w.act(GenKind::XMinus, n, j), j + 1));
  CHECK(ea.xminus_on_lowest(0, w.dim() - 1).poisoned);

  // tau_z-twisted key relation at z = 0: <s(u) x^-(u)>_+ (e_1 (x) omega)
  // equals x^-(u) e_1 (x) omega, i.e. a^p e_2 (x) omega at u-order p.
  Rat apow = rq(1);
  for (long p = 0; p <= 5; ++p) {
    ActColumn lhs = ea.xminus_on_highest(p + 1, {{0, rq(1)}});
    lhs.add_scaled(ea.xminus_on_highest(p, {{0, rq(1)}}), -b);
    CHECK(is_unit_multiple(lhs, stride, apow));
    apow *= a;
  }
}

TEST_CASE("extreme actions certify their inputs") {
  const ModuleRealization v = make_n(rq(3), 1);
  const ModuleRealization w = make_lminus(rq(1), 2);
  // e_1 is not lowest.
  CHECK_THROWS_AS(ExtremeActions(v, w, 0L, 0L), VerificationError);
  // v_1 in Lminus is not highest.
  CHECK_THROWS_AS(ExtremeActions(v, w, 1L, 1L), VerificationError);
  // A truncated negative module has no certifiable lowest vector.
  CHECK_THROWS_AS(extreme_actions(w, v), VerificationError);
  // Calls that need an absent column are refused.
  const ExtremeActions e3(make_verma(LinRat::one(), 2), w, std::nullopt, 0L);
  CHECK_THROWS_AS(e3.xi_on_lowest(0, 0), VerificationError);
  CHECK_FALSE(e3.xminus_on_highest(0, {{0, rq(1)}}).poisoned);
}

TEST_CASE("formal spectral parameter on the Hopf tensor square") {
  const ModuleRealization v = make_n(rq(1), 1), w = make_n(rq(5), 1);
  const ZTensor zt =
      tensor_poly_parameter(v, w, TensorMode::HopfY0, TensorSide::Left);
  const ModuleRealization base = tensor_Y0(v, w);
  const ModuleRealization at7 = tensor_Y0(spectral_shift(v, rq(7)), w);

  for (GenKind k : {GenKind::XPlus, GenKind::XMinus, GenKind::Xi})
    for (long n = 0; n <= 5; ++n)
      for (long c = 0; c < 4; ++c) {
        const ZColumn zc = zt.act(k, n, c);
        CHECK(zc.zdegree() <= n);
        CHECK(zc.eval(rq(0)) == base.act(k, n, c));
        CHECK(zc.eval(rq(7)) == at7.act(k, n, c));
      }

  const ZTensor ztr =
      tensor_poly_parameter(v, w, TensorMode::HopfY0, TensorSide::Right);
  const ModuleRealization wt7 = tensor_Y0(v, spectral_shift(w, rq(7)));
  for (long n = 0; n <= 4; ++n)
    for (long c = 0; c < 4; ++c)
      CHECK(ztr.act(GenKind::XMinus, n, c).eval(rq(7)) ==
            wt7.act(GenKind::XMinus, n, c));

  CHECK(zt.act(GenKind::XPlus, zt.index_cap() + 1, 0).poisoned);
  CHECK_THROWS_AS(
      tensor_poly_parameter(v, w, TensorMode::ExtremeOnly, TensorSide::Left),
      VerificationError);
}

TEST_CASE("formal spectral parameter on a one-dimensional twist") {
  const Rat a = rq(5);
  const ModuleRealization v = make_lminus(rq(2), 2);
  const ModuleRealization one = make_lplus(a, 0);

  // z on the one-dimensional leg: evaluation twists by s(u - c).
  const ZTensor zr = tensor_poly_parameter(v, one, TensorMode::OneDimRight,
                                           TensorSide::Right);
  for (const Rat& c : {rq(0), rq(3), rq(-1, 2)}) {
    const ModuleRealization t =
        tensor_onedim(LinRat::linear(a + c), v, TensorSide::Right);
    for (GenKind k : {GenKind::XPlus, GenKind::XMinus, GenKind::Xi})
      for (long n = 0; n <= 4; ++n)
        for (long col = 0; col < v.dim(); ++col)
          CHECK(zr.act(k, n, col).eval(c) == t.act(k, n, col));
  }

  // z on the module leg instead.
  const ZTensor zl = tensor_poly_parameter(v, one, TensorMode::OneDimRight,
                                           TensorSide::Left);
  const ModuleRealization t3 = tensor_onedim(LinRat::linear(a),
                                             spectral_shift(v, rq(3)),
                                             TensorSide::Right);
  for (long n = 0; n <= 4; ++n)
    for (long col = 0; col < v.dim(); ++col) {
      CHECK(zl.act(GenKind::XMinus, n, col).eval(rq(3)) ==
            t3.act(GenKind::XMinus, n, col));
      CHECK(zl.act(GenKind::XMinus, n, col).zdegree() <=
            n + LinRat::linear(a).num_degree());
    }
}

TEST_CASE("cyclicity witness over the polynomial spectral parameter") {
  const LinRat e = LinRat::parse("(u-1)/(u-5)");
  const LinRat s = LinRat::linear(rq(2));
  const ModuleRealization verma = make_verma(e, 4);
  const ModuleRealization w = make_lminus(rq(2), 2);

  const CyclicityWitness cw = cyclicity_witness(verma, w, s, 2);
  CHECK(cw.key_ok);
  CHECK(cw.newton_ok);
  CHECK(cw.depth1_ok);
  CHECK(cw.middles_ok);
  CHECK(cw.span_ok);
  CHECK(cw.target == 45);  // 1*3 + 7*2 + 28*1 pairs of composite depth <= 2
  CHECK(cw.certified == 45);
  CHECK(cw.ok());

  // Degree-two s through the simple-quotient realization of L(s^{-1}).
  const LinRat s2 = LinRat::linear(rq(1)) * LinRat::linear(rq(3));
  const ModuleRealization w2 = make_simple(s2.inverse(), 2);
  const CyclicityWitness cw2 = cyclicity_witness(verma, w2, s2, 2);
  CHECK(cw2.ok());
  const std::vector<long> wd = w2.dims();
  CHECK(cw2.target == 1 * (wd[0] + wd[1] + wd[2]) + 7 * (wd[0] + wd[1]) +
                          28 * wd[0]);

  CHECK_THROWS_AS(cyclicity_witness(verma, w, LinRat::linear(rq(4)), 2),
                  VerificationError);
  CHECK_THROWS_AS(cyclicity_witness(verma, w, s, 3), VerificationError);
}
