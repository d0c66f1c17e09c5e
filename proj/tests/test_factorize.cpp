#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "yang/factorize.hpp"

using namespace yang;

namespace {

Rat half(long n) { return Rat(n) / 2; }

StandardFactorization sorted(StandardFactorization sf) {
  std::sort(sf.positive.begin(), sf.positive.end());
  std::sort(sf.kr_pairs.begin(), sf.kr_pairs.end());
  std::sort(sf.negative.begin(), sf.negative.end());
  return sf;
}

// Rejection-sampled standard data: small multisets on a lattice offset.
StandardFactorization random_standard(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 2), pos(-4, 4), gap(1, 4),
      offset(0, 1);
  for (;;) {
    StandardFactorization sf;
    Rat off = Rat(offset(rng)) / 2;
    for (int k = count(rng); k > 0; --k) sf.positive.push_back(pos(rng) + off);
    for (int k = count(rng); k > 0; --k) {
      Rat y = pos(rng) + off;
      sf.kr_pairs.push_back({y, y + gap(rng)});
    }
    for (int k = count(rng); k > 0; --k) sf.negative.push_back(pos(rng) + off);
    if (!sf.positive.empty() || !sf.kr_pairs.empty() || !sf.negative.empty())
      if (sf.is_standard()) return sorted(sf);
  }
}

long root_mass(const LinRat& e) {
  long n = 0;
  for (const auto& [a, m] : e.roots()) n += std::abs(m);
  return n;
}

}  // namespace

TEST_CASE("delta membership") {
  CHECK(delta_contains(3, 6, 2));
  CHECK_FALSE(delta_contains(3, 6, 3));
  CHECK(delta_contains(5, 3, 100));  // b - a not natural: Delta is all of N
  CHECK_FALSE(delta_contains(5, 3, -1));
  CHECK_FALSE(delta_contains(5, 3, half(7)));
  CHECK(delta_contains(half(1), half(5), 1));
  CHECK_FALSE(delta_contains(0, 0, 0));
}

TEST_CASE("worked factorizations") {
  LinRat e = LinRat::linear(3) * LinRat::linear(9) * LinRat::linear(5) /
             (LinRat::linear(6) * LinRat::linear(0) * LinRat::linear(2));
  StandardFactorization sf = standard_factorize(e);
  CHECK(sf.positive == std::vector<Rat>{3, 9});
  CHECK(sf.kr_pairs == std::vector<std::pair<Rat, Rat>>{{5, 6}});
  CHECK(sf.negative == std::vector<Rat>{0, 2});
  CHECK(sf.is_standard());
  CHECK(sf.reassemble() == e);

  LinRat e2 = LinRat::linear(9) * LinRat::linear(3) /
              (LinRat::linear(0) * LinRat::linear(2));
  StandardFactorization sf2 = standard_factorize(e2);
  CHECK(sf2.positive == std::vector<Rat>{3, 9});
  CHECK(sf2.kr_pairs.empty());
  CHECK(sf2.negative == std::vector<Rat>{0, 2});

  StandardFactorization none = standard_factorize(LinRat::one());
  CHECK(none.positive.empty());
  CHECK(none.kr_pairs.empty());
  CHECK(none.negative.empty());

  // Repeated KR pair at one point: x^2/(x-1)^2 pairs twice, stays standard.
  LinRat sq = (LinRat::linear(0) / LinRat::linear(1)).pow(2);
  StandardFactorization sf3 = standard_factorize(sq);
  CHECK(sf3.kr_pairs == std::vector<std::pair<Rat, Rat>>{{0, 1}, {0, 1}});
  CHECK(sf3.is_standard());
}

TEST_CASE("greedy pairing prefers the minimal gap") {
  // Zeros 0, 1 and pole 2: gap 1 beats gap 2, so (1,2) pairs and 0 stays.
  LinRat e =
      LinRat::linear(0) * LinRat::linear(1) / LinRat::linear(2);
  StandardFactorization sf = standard_factorize(e);
  CHECK(sf.positive == std::vector<Rat>{0});
  CHECK(sf.kr_pairs == std::vector<std::pair<Rat, Rat>>{{1, 2}});
  CHECK(sf.negative.empty());
  CHECK(sf.is_standard());

  // Equal gaps from zeros 0, 2 to poles 1, 3: the tie-break takes y = 0
  // first, then 2 pairs with 3; the non-interleaving condition holds.
  LinRat f = LinRat::linear(0) * LinRat::linear(2) /
             (LinRat::linear(1) * LinRat::linear(3));
  StandardFactorization sf2 = standard_factorize(f);
  CHECK(sf2.kr_pairs == std::vector<std::pair<Rat, Rat>>{{0, 1}, {2, 3}});
  CHECK(sf2.is_standard());
}

TEST_CASE("standardness recognizes violations") {
  StandardFactorization sf;
  sf.kr_pairs = {{0, 2}, {1, 3}};  // z_s - y_l = 1 in both Deltas
  CHECK_FALSE(sf.is_standard());

  StandardFactorization wx;
  wx.positive = {0};
  wx.negative = {2};  // w - x = 2 is natural
  CHECK_FALSE(wx.is_standard());

  StandardFactorization zx;
  zx.positive = {1};
  zx.kr_pairs = {{0, 3}};  // z - x = 2 in Delta = {0,1,2}
  CHECK_FALSE(zx.is_standard());

  StandardFactorization wy;
  wy.kr_pairs = {{0, 3}};
  wy.negative = {1};  // w - y = 1 in Delta
  CHECK_FALSE(wy.is_standard());

  StandardFactorization ok;
  ok.positive = {3, 9};
  ok.kr_pairs = {{5, 6}};
  ok.negative = {0, 2};
  CHECK(ok.is_standard());
}

TEST_CASE("random round-trips recover standard data") {
  std::mt19937_64 rng(20260814);
  for (int trial = 0; trial < 120; ++trial) {
    StandardFactorization data = random_standard(rng);
    LinRat e = data.reassemble();
    // Reduced form: standardness forbids cancellation between parts.
    long parts = static_cast<long>(data.positive.size() +
                                   2 * data.kr_pairs.size() +
                                   data.negative.size());
    CHECK(root_mass(e) == parts);
    StandardFactorization back = standard_factorize(e);
    CHECK(back.is_standard());
    CHECK(back == data);
  }
}

TEST_CASE("deleting any factor keeps the data standard") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 40; ++trial) {
    StandardFactorization data = random_standard(rng);
    for (size_t i = 0; i < data.positive.size(); ++i) {
      StandardFactorization d = data;
      d.positive.erase(d.positive.begin() + i);
      CHECK(d.is_standard());
    }
    for (size_t i = 0; i < data.kr_pairs.size(); ++i) {
      StandardFactorization d = data;
      d.kr_pairs.erase(d.kr_pairs.begin() + i);
      CHECK(d.is_standard());
    }
    for (size_t i = 0; i < data.negative.size(); ++i) {
      StandardFactorization d = data;
      d.negative.erase(d.negative.begin() + i);
      CHECK(d.is_standard());
    }
  }
}

TEST_CASE("Tarasov irreducibility") {
  CHECK(is_irreducible_tensor({{9, 0}, {3, 2}}));
  CHECK(is_irreducible_tensor({{half(9), half(3)}}));
  CHECK(is_irreducible_tensor({}));
  Rat a = half(3);
  CHECK_FALSE(is_irreducible_tensor({{a, a + 2}, {a + 1, a + 3}}));
  // Same evaluation point: diagonal condition auto-passes.
  CHECK(is_irreducible_tensor({{0, 1}, {0, 1}}));
  // Adjacent points interact: 2 x 2 at gap one is reducible.
  CHECK_FALSE(is_irreducible_tensor({{0, 1}, {1, 2}}));
}
