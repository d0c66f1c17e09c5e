#include "yang/poly.hpp"

#include <algorithm>
#include <numeric>

namespace yang {

Poly::Poly(const Rat& c) {
  if (c != 0) c_.push_back(c);
}

Poly Poly::u() { return from_coeffs({Rat(0), Rat(1)}); }

Poly Poly::from_coeffs(std::vector<Rat> ascending) {
  Poly p;
  p.c_ = std::move(ascending);
  p.trim();
  return p;
}

Poly Poly::from_roots(const std::vector<Rat>& roots) {
  Poly p{Rat(1)};
  for (const Rat& a : roots) p = p * linear(a);
  return p;
}

Poly Poly::linear(const Rat& a) { return from_coeffs({-a, Rat(1)}); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rat Poly::coeff(long k) const {
  if (k < 0 || k >= static_cast<long>(c_.size())) return 0;
  return c_[k];
}

Rat Poly::leading() const { return c_.empty() ? Rat(0) : c_.back(); }

bool Poly::is_monic() const { return !c_.empty() && c_.back() == 1; }

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return from_coeffs(std::move(r));
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (Rat& x : r.c_) x = -x;
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return from_coeffs(std::move(r));
}

Poly Poly::operator*(const Rat& s) const {
  if (s == 0) return {};
  Poly r = *this;
  for (Rat& x : r.c_) x *= s;
  return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw VerificationError("division by zero polynomial");
  Poly q, r = *this;
  q.c_.assign(std::max<long>(0, degree() - d.degree() + 1), Rat(0));
  while (!r.is_zero() && r.degree() >= d.degree()) {
    long k = r.degree() - d.degree();
    Rat f = r.leading() / d.leading();
    q.c_[k] = f;
    // r -= f * u^k * d
    for (long i = 0; i <= d.degree(); ++i) r.c_[k + i] -= f * d.c_[i];
    r.trim();
  }
  q.trim();
  return {q, r};
}

Poly Poly::divided_by(const Poly& d) const {
  auto [q, r] = divmod(d);
  if (!r.is_zero()) throw VerificationError("inexact polynomial division");
  return q;
}

Rat Poly::eval(const Rat& x) const {
  Rat acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::taylor_shift(const Rat& a) const {
  // Horner in (u + a).
  Poly acc;
  Poly shift = from_coeffs({a, Rat(1)});
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * shift + Poly(*it);
  return acc;
}

std::pair<std::map<Rat, int>, Poly> Poly::rational_roots() const {
  std::map<Rat, int> roots;
  Poly rest = *this;
  if (rest.is_zero()) return {roots, rest};
  // Factor out u^k.
  std::size_t k = 0;
  while (k < rest.c_.size() && rest.c_[k] == 0) ++k;
  if (k > 0) {
    roots[Rat(0)] = static_cast<int>(k);
    rest.c_.erase(rest.c_.begin(), rest.c_.begin() + k);
  }
  while (rest.degree() >= 1) {
    // Scale to a primitive integer polynomial for the candidate search.
    mpz_class denlcm = 1;
    for (const Rat& c : rest.c_) denlcm = lcm(denlcm, c.get_den());
    std::vector<mpz_class> ic;
    for (const Rat& c : rest.c_) ic.push_back(Rat(c * denlcm).get_num());
    mpz_class lead = ic.back(), tail = ic.front();
    bool found = false;
    // Candidates p/q: p | tail, q | lead.
    std::vector<mpz_class> ps, qs;
    auto divisors = [](const mpz_class& v) {
      std::vector<mpz_class> out;
      mpz_class a = abs(v);
      for (mpz_class i = 1; i * i <= a; ++i)
        if (a % i == 0) {
          out.push_back(i);
          out.push_back(a / i);
        }
      return out;
    };
    for (const mpz_class& p : divisors(tail))
      for (const mpz_class& q : divisors(lead)) {
        for (int sgn : {1, -1}) {
          Rat cand(p * sgn, q);
          cand.canonicalize();
          if (rest.eval(cand) == 0) {
            roots[cand] += 1;
            rest = rest.divided_by(linear(cand));
            found = true;
            break;
          }
        }
        if (found) break;
      }
    if (!found) break;
  }
  return {roots, rest};
}

Poly Poly::interpolate(const std::vector<std::pair<Rat, Rat>>& pts) {
  Poly acc;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Poly li{Rat(1)};
    Rat denom = 1;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j == i) continue;
      li = li * linear(pts[j].first);
      denom *= pts[i].first - pts[j].first;
    }
    acc = acc + li * (pts[i].second / denom);
  }
  return acc;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (long k = degree(); k >= 0; --k) {
    Rat c = c_[k];
    if (c == 0) continue;
    if (!out.empty()) {
      out += c > 0 ? " + " : " - ";
      if (c < 0) c = -c;
    } else if (c < 0) {
      out += "-";
      c = -c;
    }
    if (k == 0 || c != 1) {
      out += rat_str(c);
      if (k > 0) out += "*";
    }
    if (k > 0) out += k == 1 ? "u" : "u^" + std::to_string(k);
  }
  return out;
}

}  // namespace yang
