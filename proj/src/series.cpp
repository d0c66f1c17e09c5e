#include "yang/series.hpp"

#include <algorithm>

namespace yang {

LaurentSeries::LaurentSeries(long order) : order_(order) {}

LaurentSeries::LaurentSeries(long lead, long order, std::vector<Rat> coeffs)
    : lead_(lead), order_(order), c_(std::move(coeffs)) {
  // Clip the window to [-order, lead].
  long want = lead_ + order_ + 1;
  if (want <= 0) {
    c_.clear();
  } else {
    c_.resize(static_cast<std::size_t>(want), Rat(0));
  }
  normalize();
}

void LaurentSeries::normalize() {
  std::size_t k = 0;
  while (k < c_.size() && c_[k] == 0) ++k;
  if (k > 0) {
    c_.erase(c_.begin(), c_.begin() + k);
    lead_ -= static_cast<long>(k);
  }
  if (c_.empty()) lead_ = -order_ - 1;
}

long LaurentSeries::lead() const { return c_.empty() ? -order_ - 1 : lead_; }

Rat LaurentSeries::coeff(long p) const {
  if (p < -order_)
    throw VerificationError("series coefficient below truncation order");
  if (c_.empty() || p > lead_) return 0;
  return c_[static_cast<std::size_t>(lead_ - p)];
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
  long order = std::min(order_, o.order_);
  long top = std::max(lead(), o.lead());
  if (top < -order) return LaurentSeries(order);
  std::vector<Rat> c;
  c.reserve(static_cast<std::size_t>(top + order + 1));
  for (long p = top; p >= -order; --p) c.push_back(coeff(p) + o.coeff(p));
  return {top, order, std::move(c)};
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r = *this;
  for (Rat& x : r.c_) x = -x;
  return r;
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const {
  return *this + (-o);
}

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
  long l1 = lead(), l2 = o.lead();
  long order = std::min(o.order_ - l1, order_ - l2);
  long top = l1 + l2;
  if (is_zero() && o.is_zero()) return LaurentSeries(order);
  if (top < -order) return LaurentSeries(order);
  std::vector<Rat> c(static_cast<std::size_t>(top + order + 1), Rat(0));
  for (long i = l1; i >= -order_ && i >= -order - l2; --i) {
    Rat a = coeff(i);
    if (a == 0) continue;
    for (long j = l2; j >= -o.order_ && i + j >= -order; --j) {
      Rat b = o.coeff(j);
      if (b != 0) c[static_cast<std::size_t>(top - (i + j))] += a * b;
    }
  }
  return {top, order, std::move(c)};
}

LaurentSeries LaurentSeries::operator*(const Rat& s) const {
  if (s == 0) return LaurentSeries(order_);
  LaurentSeries r = *this;
  for (Rat& x : r.c_) x *= s;
  return r;
}

bool LaurentSeries::operator==(const LaurentSeries& o) const {
  return order_ == o.order_ && lead() == o.lead() && c_ == o.c_;
}

LaurentSeries LaurentSeries::principal_part() const {
  long top = std::min(lead(), -1L);
  if (top < -order_) return LaurentSeries(order_);
  std::vector<Rat> c;
  for (long p = top; p >= -order_; --p) c.push_back(coeff(p));
  return {top, order_, std::move(c)};
}

Poly LaurentSeries::polynomial_part() const {
  if (order_ < 0)
    throw VerificationError("polynomial part not determined at negative order");
  std::vector<Rat> asc;
  for (long p = 0; p <= lead(); ++p) asc.push_back(coeff(p));
  return Poly::from_coeffs(std::move(asc));
}

LaurentSeries LaurentSeries::truncated(long new_order) const {
  if (new_order > order_)
    throw VerificationError("cannot extend series precision");
  long top = lead();
  if (top < -new_order) return LaurentSeries(new_order);
  std::vector<Rat> c;
  for (long p = top; p >= -new_order; --p) c.push_back(coeff(p));
  return {top, new_order, std::move(c)};
}

LaurentSeries LaurentSeries::inverse() const {
  if (is_zero()) throw VerificationError("inverting zero series");
  long L = lead_;
  Rat c0 = c_[0];
  // Coefficients e_k of (u^{-L}/c0) * f = 1 + e_1 u^{-1} + ...
  long m = order_ + L;  // modes of the unit part known: k <= m
  std::vector<Rat> e(static_cast<std::size_t>(std::max(0L, m)) + 1, Rat(0));
  for (long k = 1; k <= m; ++k) e[static_cast<std::size_t>(k)] = coeff(L - k) / c0;
  std::vector<Rat> g(e.size(), Rat(0));
  g[0] = 1;
  for (long k = 1; k < static_cast<long>(g.size()); ++k) {
    Rat acc = 0;
    for (long j = 1; j <= k; ++j) acc += e[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(k - j)];
    g[static_cast<std::size_t>(k)] = -acc;
  }
  for (Rat& x : g) x /= c0;
  return {-L, order_ + 2 * L, std::move(g)};
}

std::string LaurentSeries::str() const {
  std::string out;
  for (long p = lead(); p >= -order_; --p) {
    Rat c = coeff(p);
    if (c == 0) continue;
    if (!out.empty()) {
      out += c > 0 ? " + " : " - ";
      if (c < 0) c = -c;
    } else if (c < 0) {
      out += "-";
      c = -c;
    }
    if (p == 0 || c != 1) {
      out += rat_str(c);
      if (p != 0) out += "*";
    }
    if (p != 0) out += p == 1 ? "u" : "u^" + std::to_string(p);
  }
  if (out.empty()) out = "0";
  out += " + O(u^" + std::to_string(-order_ - 1) + ")";
  return out;
}

LaurentSeries expand_at_infinity(const Poly& p, long order) {
  if (p.is_zero()) return LaurentSeries(order);
  std::vector<Rat> c;
  for (long k = p.degree(); k >= -order; --k) c.push_back(p.coeff(k));
  return {p.degree(), order, std::move(c)};
}

LaurentSeries expand_at_infinity(const LinRat& f, long order) {
  if (order < -f.degree())
    throw VerificationError("expansion order below the degree of " + f.str());
  long margin = order + 2 * f.num_degree() + f.den_degree() + 2;
  LaurentSeries acc = expand_at_infinity(Poly(Rat(1)), margin);
  for (const auto& [a, e] : f.roots()) {
    LaurentSeries lin = expand_at_infinity(Poly::linear(a), margin);
    LaurentSeries use = e > 0 ? lin : lin.inverse().truncated(margin);
    for (int k = 0; k < std::abs(e); ++k) acc = acc * use;
  }
  return acc.truncated(order);
}

}  // namespace yang
