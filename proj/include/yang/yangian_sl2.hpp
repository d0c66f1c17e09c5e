#pragma once

#include <map>
#include <string>
#include <vector>

#include "yang/poly.hpp"
#include "yang/rational.hpp"

namespace yang {

// Drinfeld generators of the shifted Yangian of sl2. The class order
// x^- < xi < x^+ is the triangular normal form order.
enum class GenKind { XMinus = 0, Xi = 1, XPlus = 2 };

struct Gen {
  GenKind kind;
  long n;
  auto operator<=>(const Gen& o) const = default;
  std::string str() const;
};

using Word = std::vector<Gen>;

// Net x^+ count minus x^- count: the weight of the word in units of alpha.
long word_weight(const Word& w);

// Formal rational combination of generator words in the free algebra.
struct Element {
  std::map<Word, Rat> terms;  // no zero coefficients

  static Element zero() { return {}; }
  static Element one();

  void add(const Word& w, const Rat& c);
  void add_scaled(const Element& o, const Rat& c);
  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;  // concatenation, no rewriting
  Element scaled(const Rat& c) const;
  bool operator==(const Element& o) const = default;
  bool is_zero() const { return terms.empty(); }
  std::string str() const;
};

enum class NormalOrder { XMinusAscending, Triangular };

// Y_mu(sl2) for <mu, alpha> = shift: xi_p is defined for p >= -shift - 1,
// equals 1 at p = -shift - 1 and vanishes below.
class ShiftedAlgebra {
 public:
  explicit ShiftedAlgebra(long shift) : shift_(shift) {}

  long shift() const { return shift_; }
  // Smallest index with xi_p a nontrivial generator; xi_{floor-1} = 1.
  long xi_floor() const { return -shift_; }

  Element xplus(long n) const;  // throws VerificationError on n < 0
  Element xminus(long n) const;
  Element xi(long p) const;  // the unit at floor-1, zero below

  bool is_normal(const Word& w, NormalOrder order = NormalOrder::Triangular) const;
  // PBW normal form: combinations of (x^- ascending)(xi ascending)(x^+
  // ascending) monomials. XMinusAscending restricts to words in the x^-
  // alone and only reorders those.
  Element straighten(const Element& el,
                     NormalOrder order = NormalOrder::Triangular) const;

 private:
  long shift_;
};

// Generator maps extended multiplicatively over words; images live in the
// free algebra and are straightened by the caller as needed.

// x^+_n -> x^+_{n-zeta}, x^-_n -> x^-_{n-eta}, xi_p -> xi_{p-zeta-eta},
// landing in the algebra with shift + zeta + eta. Throws VerificationError
// unless zeta, eta <= 0.
Element shift_hom(long zeta, long eta, const Element& el);

// X_p -> sum_n binom(p, n) X_{p-n} z^n with x^{pm}_{k<0} = 0; coefficients
// are polynomials in z. The algebra fixes the xi cutoff.
std::map<Word, Poly> tau_poly(const ShiftedAlgebra& A, const Element& el);
// Evaluation of tau_poly at z = a.
Element tau(const ShiftedAlgebra& A, const Rat& a, const Element& el);

}  // namespace yang
