#include "yang/qrat.hpp"

namespace yang {

QRat::QRat(const LinRat& f) {
  num_ = f.num_poly();
  for (const auto& [a, e] : f.roots())
    if (e < 0) den_[a] = -e;
}

QRat QRat::from(Poly num, std::map<Rat, int> den_roots) {
  QRat q;
  q.num_ = std::move(num);
  for (auto& [a, e] : den_roots) {
    if (e < 0) throw VerificationError("negative denominator exponent");
    if (e > 0) q.den_.emplace(a, e);
  }
  q.reduce();
  return q;
}

void QRat::reduce() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto it = den_.begin(); it != den_.end();) {
    auto& [a, e] = *it;
    while (e > 0 && num_.eval(a) == 0) {
      num_ = num_.divided_by(Poly::linear(a));
      --e;
    }
    it = e == 0 ? den_.erase(it) : std::next(it);
  }
}

Poly QRat::den_poly() const {
  Poly p{Rat(1)};
  for (const auto& [a, e] : den_)
    for (int k = 0; k < e; ++k) p = p * Poly::linear(a);
  return p;
}

long QRat::degree() const {
  if (is_zero()) return -1000000;
  long d = num_.degree();
  for (const auto& [a, e] : den_) d -= e;
  return d;
}

QRat QRat::operator+(const QRat& o) const {
  // Common denominator: union with max exponents.
  std::map<Rat, int> den;
  for (const auto& [a, e] : den_) den[a] = e;
  for (const auto& [a, e] : o.den_) den[a] = std::max(den[a], e);
  Poly lhs = num_, rhs = o.num_;
  for (const auto& [a, e] : den) {
    int e1 = e, e2 = e;
    if (auto it = den_.find(a); it != den_.end()) e1 -= it->second;
    if (auto it = o.den_.find(a); it != o.den_.end()) e2 -= it->second;
    for (int k = 0; k < e1; ++k) lhs = lhs * Poly::linear(a);
    for (int k = 0; k < e2; ++k) rhs = rhs * Poly::linear(a);
  }
  return from(lhs + rhs, std::move(den));
}

QRat QRat::operator-() const {
  QRat r = *this;
  r.num_ = -r.num_;
  return r;
}

QRat QRat::operator-(const QRat& o) const { return *this + (-o); }

QRat QRat::operator*(const QRat& o) const {
  std::map<Rat, int> den = den_;
  for (const auto& [a, e] : o.den_) den[a] += e;
  return from(num_ * o.num_, std::move(den));
}

QRat QRat::operator*(const Rat& s) const {
  QRat r = *this;
  r.num_ = r.num_ * s;
  if (s == 0) r.den_.clear();
  return r;
}

QRat QRat::operator/(const QRat& o) const {
  if (o.is_zero()) throw VerificationError("division by zero");
  auto [roots, rest] = o.num_.rational_roots();
  if (rest.degree() > 0)
    throw VerificationError("divisor numerator does not split: " + o.num_.str());
  Poly num = num_ * o.den_poly();
  std::map<Rat, int> den = den_;
  for (const auto& [a, e] : roots) den[a] += e;
  return from(num * (Rat(1) / rest.leading()), std::move(den));
}

Rat QRat::eval(const Rat& x) const {
  Rat d = 1;
  for (const auto& [a, e] : den_) {
    Rat base = x - a;
    if (base == 0) throw VerificationError("evaluation at pole " + rat_str(x));
    for (int k = 0; k < e; ++k) d *= base;
  }
  return num_.eval(x) / d;
}

Poly QRat::polynomial_part() const { return num_.divmod(den_poly()).first; }

QRat QRat::proper_part() const {
  auto [q, r] = num_.divmod(den_poly());
  QRat out;
  out.num_ = r;
  out.den_ = den_;
  out.reduce();
  return out;
}

LaurentSeries QRat::at_infinity(long order) const {
  if (is_zero()) return LaurentSeries(order);
  long den_deg = 0;
  for (const auto& [a, e] : den_) den_deg += e;
  if (order < -(num_.degree() - den_deg))
    throw VerificationError("expansion order excludes the leading term");
  long margin = order + 2 * num_.degree() + den_deg + 2;
  LaurentSeries s = expand_at_infinity(num_, margin);
  for (const auto& [a, e] : den_) {
    LaurentSeries inv =
        expand_at_infinity(Poly::linear(a), margin).inverse().truncated(margin);
    for (int k = 0; k < e; ++k) s = s * inv;
  }
  return s.truncated(order);
}

std::string QRat::str() const {
  if (is_zero()) return "0";
  auto [roots, rest] = num_.rational_roots();
  if (rest.degree() == 0) {
    Rat scale = rest.leading();
    std::map<Rat, int> all = roots;
    for (const auto& [a, e] : den_) all[a] -= e;
    LinRat shape = LinRat::from_roots(std::move(all));
    if (shape.is_one()) return rat_str(scale);
    if (scale == 1) return shape.str();
    if (scale == -1) return "-" + shape.str();
    return rat_str(scale) + "*" + shape.str();
  }
  std::string num = num_.degree() > 0 ? "(" + num_.str() + ")" : num_.str();
  if (den_.empty()) return num;
  std::string den;
  int den_factors = 0;
  for (const auto& [a, e] : den_) {
    std::string base =
        a == 0 ? "u"
               : (a > 0 ? "(u-" + rat_str(a) + ")" : "(u+" + rat_str(Rat(-a)) + ")");
    if (e != 1) base += "^" + std::to_string(e);
    if (++den_factors > 1) den += "*";
    den += base;
  }
  if (den_factors > 1) den = "(" + den + ")";
  return num + "/" + den;
}

std::pair<Rat, LinRat> QRat::as_scaled_linrat() const {
  if (is_zero()) return {Rat(0), LinRat::one()};
  auto [roots, rest] = num_.rational_roots();
  if (rest.degree() > 0)
    throw VerificationError("numerator does not split: " + num_.str());
  std::map<Rat, int> all = roots;
  for (const auto& [a, e] : den_) all[a] -= e;
  return {rest.leading(), LinRat::from_roots(std::move(all))};
}

}  // namespace yang
