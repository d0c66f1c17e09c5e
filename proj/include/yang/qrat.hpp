#pragma once

#include <map>
#include <string>

#include "yang/linrat.hpp"
#include "yang/poly.hpp"
#include "yang/rational.hpp"
#include "yang/series.hpp"

namespace yang {

// Rational function with arbitrary polynomial numerator and a monic
// denominator that splits over Q, kept in lowest terms. This is the scalar
// type for module action entries; LinRat stays the monic group element.
class QRat {
 public:
  QRat() = default;  // 0
  QRat(const Rat& c) : num_(c) {}
  QRat(const Poly& p) : num_(p) {}
  explicit QRat(const LinRat& f);
  static QRat from(Poly num, std::map<Rat, int> den_roots);

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  const Poly& num() const { return num_; }
  const std::map<Rat, int>& den_roots() const { return den_; }
  Poly den_poly() const;
  long degree() const;  // deg num - deg den (for 0: a large negative sentinel)

  QRat operator+(const QRat& o) const;
  QRat operator-(const QRat& o) const;
  QRat operator-() const;
  QRat operator*(const QRat& o) const;
  QRat operator*(const Rat& s) const;
  // Division by a function whose numerator splits over Q.
  QRat operator/(const QRat& o) const;
  // Lowest terms with a monic denominator is canonical, so representational
  // equality is mathematical equality.
  bool operator==(const QRat& o) const = default;
  auto operator<=>(const QRat& o) const = default;

  Rat eval(const Rat& x) const;  // throws VerificationError at a pole

  // Proper part: f minus its polynomial part; equals the principal part of
  // the expansion at infinity, computed exactly.
  QRat proper_part() const;
  Poly polynomial_part() const;

  LaurentSeries at_infinity(long order) const;

  // Succeeds when the numerator is a constant times a product of rational
  // linear factors (always true for entries built from the closed families);
  // returns scale * shape.
  std::pair<Rat, LinRat> as_scaled_linrat() const;

  std::string str() const;

 private:
  void reduce();
  Poly num_;
  std::map<Rat, int> den_;  // exponents > 0
};

}  // namespace yang
