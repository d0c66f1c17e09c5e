#pragma once

#include <map>
#include <optional>
#include <string>

#include "yang/cartan.hpp"
#include "yang/lweight.hpp"

namespace yang {

// Monomial in the A_{i,a}^{-1}: value counts inverse powers, always >= 1.
using AInvMonomial = std::map<std::pair<long, Rat>, int>;

long monomial_size(const AInvMonomial& m);
// The l-weight top * prod A_{i,a}^{-mult}.
LWeight monomial_lweight(const CartanData& cd, const LWeight& top,
                         const AInvMonomial& m);

// Depth-truncated q-character: top l-weight times a polynomial in the
// A^{-1} with terms of total size <= depth.
class QCharacter {
 public:
  QCharacter() = default;
  // The unit character of the module L(top): the single term 1.
  QCharacter(LWeight top, long depth);

  const LWeight& top() const { return top_; }
  long depth() const { return depth_; }
  const std::map<AInvMonomial, long>& terms() const { return terms_; }
  long term(const AInvMonomial& m) const;
  void add_term(const AInvMonomial& m, long mult);  // drops entries past depth

  // Same terms over the trivial top.
  QCharacter normalized() const;
  QCharacter truncated(long depth) const;
  // Tops multiply, terms convolve; result depth is the minimum.
  QCharacter operator*(const QCharacter& o) const;
  bool operator==(const QCharacter& o) const = default;

  // Total multiplicity per weight via the weight map.
  std::map<Weight, long> character(const CartanData& cd) const;

  std::string str(const CartanData& cd) const;

 private:
  LWeight top_;
  long depth_ = 0;
  std::map<AInvMonomial, long> terms_;  // no zero multiplicities
};

// Closed forms from the explicit families. Chains are over sl2 unless the
// family is N (any type).
QCharacter qc_N(const CartanData& cd, long i, const Rat& a, long depth);
QCharacter qc_frakL(const Rat& a, const Rat& b, long depth);  // chain from b toward a
QCharacter qc_L_finite(const Rat& a, const Rat& b, long depth);  // requires b-a in N
QCharacter qc_Lplus(const Rat& a, long depth);
QCharacter qc_Lminus(const Rat& b, long depth);
QCharacter qc_KR(long k, const Rat& a, long depth);  // W^{(1)}_{k,a}

// q-character of the simple sl2 module L(e) via standard factorization.
QCharacter qc_simple_sl2(const LinRat& e, long depth);

// chi(L^-_{i,a}) against the product formula over positive roots, to depth.
bool product_character_check(const CartanData& cd, long i, const Rat& a,
                             long depth);

// Greedy peeling of a product of irreducible sl2 q-characters into simple
// classes keyed by highest l-weight. nullopt when the truncation depth is
// insufficient to certify the answer; throws VerificationError when a
// multiplicity goes negative (input not a product of irreducibles).
std::optional<std::map<LinRat, long>> jordan_holder_sl2(const QCharacter& x,
                                                        long depth);

}  // namespace yang
