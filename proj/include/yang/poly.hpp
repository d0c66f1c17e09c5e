#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "yang/rational.hpp"

namespace yang {

// Dense univariate polynomial over Q, coefficients ascending, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Rat& c);
  static Poly u();
  static Poly from_coeffs(std::vector<Rat> ascending);
  static Poly from_roots(const std::vector<Rat>& roots);  // monic
  static Poly linear(const Rat& a);                       // u - a

  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
  Rat coeff(long k) const;
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat leading() const;
  bool is_monic() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rat& s) const;
  bool operator==(const Poly& o) const = default;
  auto operator<=>(const Poly& o) const = default;

  // Quotient and remainder; divisor nonzero.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  // Exact division; throws VerificationError if the remainder is nonzero.
  Poly divided_by(const Poly& d) const;

  Rat eval(const Rat& x) const;
  Poly taylor_shift(const Rat& a) const;  // p(u + a)

  // All rational roots with multiplicity, plus the rootless cofactor.
  std::pair<std::map<Rat, int>, Poly> rational_roots() const;

  // Lagrange interpolation through distinct sample points.
  static Poly interpolate(const std::vector<std::pair<Rat, Rat>>& pts);

  std::string str() const;  // human-readable, e.g. "u^2 - 3*u + 1/2"

 private:
  void trim();
  std::vector<Rat> c_;
};

}  // namespace yang
