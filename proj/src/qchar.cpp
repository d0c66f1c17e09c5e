#include "yang/qchar.hpp"

#include <algorithm>

#include "yang/factorize.hpp"

namespace yang {

namespace {

const CartanData& rank_one() {
  static CartanData cd = cartan("A1");
  return cd;
}

}  // namespace

long monomial_size(const AInvMonomial& m) {
  long n = 0;
  for (const auto& [k, v] : m) n += v;
  return n;
}

LWeight monomial_lweight(const CartanData& cd, const LWeight& top,
                         const AInvMonomial& m) {
  LWeight e = top;
  for (const auto& [k, v] : m) e = e * gen_A(cd, k.first, k.second).pow(-v);
  return e;
}

QCharacter::QCharacter(LWeight top, long depth)
    : top_(std::move(top)), depth_(depth) {
  terms_[{}] = 1;
}

long QCharacter::term(const AInvMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

void QCharacter::add_term(const AInvMonomial& m, long mult) {
  if (monomial_size(m) > depth_ || mult == 0) return;
  long& slot = terms_[m];
  slot += mult;
  if (slot == 0) terms_.erase(m);
}

QCharacter QCharacter::normalized() const {
  QCharacter r = *this;
  r.top_ = LWeight(top_.rank());
  return r;
}

QCharacter QCharacter::truncated(long depth) const {
  if (depth > depth_) throw VerificationError("cannot extend q-character depth");
  QCharacter r;
  r.top_ = top_;
  r.depth_ = depth;
  for (const auto& [m, c] : terms_)
    if (monomial_size(m) <= depth) r.terms_[m] = c;
  return r;
}

QCharacter QCharacter::operator*(const QCharacter& o) const {
  QCharacter r;
  r.top_ = top_ * o.top_;
  r.depth_ = std::min(depth_, o.depth_);
  for (const auto& [m1, c1] : terms_) {
    long s1 = monomial_size(m1);
    if (s1 > r.depth_) continue;
    for (const auto& [m2, c2] : o.terms_) {
      if (s1 + monomial_size(m2) > r.depth_) continue;
      AInvMonomial m = m1;
      for (const auto& [k, v] : m2) m[k] += v;
      r.terms_[m] += c1 * c2;
    }
  }
  for (auto it = r.terms_.begin(); it != r.terms_.end();)
    it = it->second == 0 ? r.terms_.erase(it) : std::next(it);
  return r;
}

std::map<Weight, long> QCharacter::character(const CartanData& cd) const {
  std::map<Weight, long> chi;
  Weight base = top_.weight(cd);
  for (const auto& [m, c] : terms_) {
    Weight w = base;
    for (const auto& [k, v] : m)
      for (long j = 0; j < cd.rank; ++j)
        w.c[j] -= Rat(v) * cd.c[j][k.first];  // alpha_i in w-coordinates
    chi[w] += c;
  }
  for (auto it = chi.begin(); it != chi.end();)
    it = it->second == 0 ? chi.erase(it) : std::next(it);
  return chi;
}

std::string QCharacter::str(const CartanData& cd) const {
  std::string out = top_.str();
  std::string tail;
  for (const auto& [m, c] : terms_) {
    if (!tail.empty()) tail += " + ";
    std::string mono;
    for (const auto& [k, v] : m) {
      if (!mono.empty()) mono += "*";
      mono += "A(" + std::to_string(k.first + 1) + "," + rat_str(k.second) +
              ")^-" + std::to_string(v);
    }
    if (mono.empty()) mono = "1";
    tail += (c == 1 ? "" : std::to_string(c) + "*") + mono;
  }
  if (tail.empty()) tail = "0";
  return out + " * (" + tail + ")";
}

namespace {

// Chain character: terms prod_{t<k} A_{b-t}^{-1} for 0 <= k <= len (len < 0
// for the unbounded chain), truncated at depth.
QCharacter chain(LWeight top, const Rat& b, long len, long depth) {
  QCharacter x(std::move(top), depth);
  AInvMonomial m;
  for (long k = 1; k <= depth && (len < 0 || k <= len); ++k) {
    m[{0, b - (k - 1)}] += 1;
    x.add_term(m, 1);
  }
  return x;
}

LWeight rank_one_top(const LinRat& e) { return LWeight::from_components({e}); }

}  // namespace

QCharacter qc_N(const CartanData& cd, long i, const Rat& a, long depth) {
  LWeight top = gen_Y(cd, i, a - Rat(cd.d[i]) / 2);
  for (long j = 0; j < cd.rank; ++j)
    if (cd.c[i][j] < 0) top = top * psi(cd, j, a - cd.dij[i][j]);
  QCharacter x(top, depth);
  x.add_term({{{i, a}, 1}}, 1);
  return x;
}

QCharacter qc_frakL(const Rat& a, const Rat& b, long depth) {
  LinRat top = LinRat::linear(a) / LinRat::linear(b);
  return chain(rank_one_top(top), b, -1, depth);
}

QCharacter qc_L_finite(const Rat& a, const Rat& b, long depth) {
  if (!is_nonneg_int(b - a))
    throw VerificationError("L_b^a finite form needs b-a in N, got " +
                            rat_str(b - a));
  LinRat top = LinRat::linear(a) / LinRat::linear(b);
  return chain(rank_one_top(top), b, to_long(b - a), depth);
}

QCharacter qc_Lplus(const Rat& a, long depth) {
  return QCharacter(rank_one_top(LinRat::linear(a)), depth);
}

QCharacter qc_Lminus(const Rat& b, long depth) {
  return chain(rank_one_top(LinRat::linear(b).inverse()), b, -1, depth);
}

QCharacter qc_KR(long k, const Rat& a, long depth) {
  if (k < 0) throw VerificationError("KR parameter k must be a natural number");
  return qc_L_finite(a - k, a, depth);
}

QCharacter qc_simple_sl2(const LinRat& e, long depth) {
  StandardFactorization sf = standard_factorize(e);
  QCharacter x(rank_one_top(LinRat::one()), depth);
  for (const Rat& p : sf.positive) x = x * qc_Lplus(p, depth);
  for (const auto& [y, z] : sf.kr_pairs) x = x * qc_L_finite(y, z, depth);
  for (const Rat& w : sf.negative) x = x * qc_Lminus(w, depth);
  if (!(x.top() == rank_one_top(e)))
    throw VerificationError("factor tops do not reassemble the l-weight");
  return x;
}

bool product_character_check(const CartanData& cd, long i, const Rat& a,
                             long depth) {
  if (cd.rank != 1 || i != 0)
    throw VerificationError(
        "product character check uses the rank-one closed form");
  std::map<Weight, long> lhs = qc_Lminus(a, depth).character(cd);
  std::map<Weight, long> rhs;
  for (long k = 0; k <= depth; ++k) {
    Weight w(1);
    w.c[0] = a - 2 * k;
    rhs[w] = 1;
  }
  return lhs == rhs;
}

std::optional<std::map<LinRat, long>> jordan_holder_sl2(const QCharacter& x,
                                                        long depth) {
  const CartanData& cd = rank_one();
  long d = std::min(depth, x.depth());
  QCharacter work = x.truncated(d);
  std::map<AInvMonomial, long> terms = work.terms();
  std::map<LinRat, long> out;
  bool inconclusive = false;
  while (!terms.empty()) {
    // A minimal-size term is maximal in the l-weight order.
    auto best = terms.begin();
    for (auto it = terms.begin(); it != terms.end(); ++it)
      if (monomial_size(it->first) < monomial_size(best->first)) best = it;
    const AInvMonomial peel = best->first;
    long mult = best->second;
    if (mult < 0)
      throw VerificationError(
          "negative multiplicity: not a product of irreducible q-characters");
    if (monomial_size(peel) == d) inconclusive = true;
    LinRat e = monomial_lweight(cd, x.top(), peel).comp(0);
    out[e] += mult;
    QCharacter qcs = qc_simple_sl2(e, d);
    for (const auto& [m, c] : qcs.terms()) {
      AInvMonomial key = peel;
      for (const auto& [k, v] : m) key[k] += v;
      if (monomial_size(key) > d) continue;
      long& slot = terms[key];
      slot -= mult * c;
      if (slot == 0) terms.erase(key);
    }
  }
  if (inconclusive) return std::nullopt;
  return out;
}

}  // namespace yang
