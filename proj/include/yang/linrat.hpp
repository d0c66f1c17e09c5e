#pragma once

#include <map>
#include <string>

#include "yang/poly.hpp"
#include "yang/rational.hpp"

namespace yang {

// Monic rational function of u with all zeros and poles in Q, stored as the
// multiset of roots with integer exponents (poles negative). Forms a group
// under multiplication.
class LinRat {
 public:
  LinRat() = default;  // 1
  static LinRat one() { return {}; }
  static LinRat linear(const Rat& a);  // u - a
  static LinRat from_roots(std::map<Rat, int> roots);
  // Requires both polynomials monic with all roots rational.
  static LinRat from_polys(const Poly& num, const Poly& den);

  LinRat operator*(const LinRat& o) const;
  LinRat operator/(const LinRat& o) const;
  LinRat inverse() const;
  LinRat pow(int k) const;
  bool operator==(const LinRat& o) const = default;
  auto operator<=>(const LinRat& o) const = default;

  // f(u - c): every root a moves to a + c.
  LinRat shifted(const Rat& c) const;

  bool is_one() const { return roots_.empty(); }
  bool is_polynomial() const;
  long degree() const;  // deg numerator - deg denominator
  long num_degree() const;
  long den_degree() const;
  int exponent_of(const Rat& a) const;
  const std::map<Rat, int>& roots() const { return roots_; }

  LinRat numerator_part() const;    // factors with positive exponent
  LinRat denominator_part() const;  // factors with negative exponent, inverted
  Poly num_poly() const;
  Poly den_poly() const;

  Rat eval(const Rat& x) const;  // throws VerificationError at a pole

  std::string str() const;
  static LinRat parse(const std::string& s);  // throws ParseError

 private:
  LinRat& mul_root(const Rat& a, int e);
  std::map<Rat, int> roots_;  // no zero exponents
};

}  // namespace yang
