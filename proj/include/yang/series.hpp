#pragma once

#include <string>
#include <vector>

#include "yang/linrat.hpp"
#include "yang/poly.hpp"
#include "yang/rational.hpp"

namespace yang {

// Truncated Laurent expansion at u = infinity. `order` is explicit everywhere:
// coefficients of u^p are known exactly for all p >= -order, the tail
// O(u^{-order-1}) is unknown. Operations never extend precision.
class LaurentSeries {
 public:
  // Zero series known to the given order.
  explicit LaurentSeries(long order);
  // coeffs[k] is the coefficient of u^{lead-k}; entries below -order ignored.
  LaurentSeries(long lead, long order, std::vector<Rat> coeffs);

  long order() const { return order_; }
  // Highest power with a nonzero known coefficient; for the zero series this
  // is -order-1 (the first unknown power).
  long lead() const;
  bool is_zero() const { return c_.empty(); }
  // Requires p >= -order (throws VerificationError otherwise).
  Rat coeff(long p) const;

  LaurentSeries operator+(const LaurentSeries& o) const;
  LaurentSeries operator-(const LaurentSeries& o) const;
  LaurentSeries operator-() const;
  LaurentSeries operator*(const LaurentSeries& o) const;
  LaurentSeries operator*(const Rat& s) const;
  bool operator==(const LaurentSeries& o) const;  // same order and coefficients

  // Keeps exactly the coefficients of u^{-p-1}, p >= 0.
  LaurentSeries principal_part() const;
  // The polynomial part (powers >= 0), exact.
  Poly polynomial_part() const;
  // Lower the precision to new_order <= order.
  LaurentSeries truncated(long new_order) const;
  // Reciprocal; requires a nonzero leading coefficient. Result order follows
  // the product rule so that *this * inverse() == 1 to the resulting order.
  LaurentSeries inverse() const;

  std::string str() const;

 private:
  void normalize();
  long lead_ = 0;        // power of c_[0] when nonempty
  long order_ = 0;
  std::vector<Rat> c_;   // highest power first; c_.front() != 0; ends at power -order_
};

// Expansion of a monic factored rational function; requires order >= -degree.
LaurentSeries expand_at_infinity(const LinRat& f, long order);
// Expansion of a polynomial (exact, then truncated to the given order).
LaurentSeries expand_at_infinity(const Poly& p, long order);

}  // namespace yang
