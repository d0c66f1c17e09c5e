#include "yang/linrat.hpp"

#include <cctype>

namespace yang {

namespace {

// mpq_class(p, q) does not canonicalize; equality requires canonical form, so
// normalize every root that enters a key position.
Rat canon(Rat a) {
  a.canonicalize();
  return a;
}

}  // namespace

LinRat LinRat::linear(const Rat& a) {
  LinRat f;
  f.roots_[canon(a)] = 1;
  return f;
}

LinRat LinRat::from_roots(std::map<Rat, int> roots) {
  LinRat f;
  for (auto& [a, e] : roots)
    if (e != 0) f.roots_.emplace(canon(a), e);
  return f;
}

LinRat LinRat::from_polys(const Poly& num, const Poly& den) {
  if (!num.is_monic() || !den.is_monic())
    throw VerificationError("non-monic rational function");
  LinRat f;
  for (const Poly* p : {&num, &den}) {
    auto [roots, rest] = p->rational_roots();
    if (rest.degree() > 0)
      throw VerificationError("irrational roots in: " + p->str());
    int sgn = p == &num ? 1 : -1;
    for (const auto& [a, e] : roots) f.mul_root(a, sgn * e);
  }
  return f;
}

LinRat& LinRat::mul_root(const Rat& a, int e) {
  int& slot = roots_[a];
  slot += e;
  if (slot == 0) roots_.erase(a);
  return *this;
}

LinRat LinRat::operator*(const LinRat& o) const {
  LinRat f = *this;
  for (const auto& [a, e] : o.roots_) f.mul_root(a, e);
  return f;
}

LinRat LinRat::inverse() const {
  LinRat f;
  for (const auto& [a, e] : roots_) f.roots_[a] = -e;
  return f;
}

LinRat LinRat::operator/(const LinRat& o) const { return *this * o.inverse(); }

LinRat LinRat::pow(int k) const {
  LinRat f;
  if (k != 0)
    for (const auto& [a, e] : roots_) f.roots_[a] = e * k;
  return f;
}

LinRat LinRat::shifted(const Rat& c) const {
  LinRat f;
  for (const auto& [a, e] : roots_) f.roots_[canon(a + c)] = e;
  return f;
}

bool LinRat::is_polynomial() const {
  for (const auto& [a, e] : roots_)
    if (e < 0) return false;
  return true;
}

long LinRat::degree() const {
  long d = 0;
  for (const auto& [a, e] : roots_) d += e;
  return d;
}

long LinRat::num_degree() const {
  long d = 0;
  for (const auto& [a, e] : roots_)
    if (e > 0) d += e;
  return d;
}

long LinRat::den_degree() const { return num_degree() - degree(); }

int LinRat::exponent_of(const Rat& a) const {
  auto it = roots_.find(a);
  return it == roots_.end() ? 0 : it->second;
}

LinRat LinRat::numerator_part() const {
  LinRat f;
  for (const auto& [a, e] : roots_)
    if (e > 0) f.roots_[a] = e;
  return f;
}

LinRat LinRat::denominator_part() const {
  LinRat f;
  for (const auto& [a, e] : roots_)
    if (e < 0) f.roots_[a] = -e;
  return f;
}

Poly LinRat::num_poly() const {
  Poly p{Rat(1)};
  for (const auto& [a, e] : roots_)
    for (int k = 0; k < e; ++k) p = p * Poly::linear(a);
  return p;
}

Poly LinRat::den_poly() const { return inverse().num_poly(); }

Rat LinRat::eval(const Rat& x) const {
  Rat v = 1;
  for (const auto& [a, e] : roots_) {
    Rat base = x - a;
    if (base == 0) {
      if (e < 0) throw VerificationError("evaluation at pole " + rat_str(x));
      return 0;
    }
    for (int k = 0; k < e; ++k) v *= base;
    for (int k = 0; k > e; --k) v /= base;
  }
  return v;
}

namespace {

std::string factor_str(const Rat& a, int e) {
  std::string base;
  if (a == 0) {
    base = "u";
  } else if (a > 0) {
    base = "(u-" + rat_str(a) + ")";
  } else {
    base = "(u+" + rat_str(Rat(-a)) + ")";
  }
  if (e != 1) base += "^" + std::to_string(e);
  return base;
}

}  // namespace

std::string LinRat::str() const {
  if (roots_.empty()) return "1";
  std::string num, den;
  int den_factors = 0;
  for (const auto& [a, e] : roots_) {
    if (e > 0) num += factor_str(a, e);
    if (e < 0) {
      if (++den_factors > 1) den += "*";
      den += factor_str(a, -e);
    }
  }
  if (num.empty()) num = "1";
  if (den_factors == 0) return num;
  if (den_factors > 1) den = "(" + den + ")";
  return num + "/" + den;
}

namespace {

// Recursive-descent parser for the monic factored grammar, e.g.
// "(u-3)(u-9)/(u*(u-2))", "(u+1/2)^-2", "1".
class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  LinRat parse() {
    LinRat f = product();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("rational function parse error at offset " +
                     std::to_string(pos_) + ": " + why);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool eat(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  long integer() {
    skip();
    bool neg = eat('-');
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected integer");
    long v = std::stol(s_.substr(start, pos_ - start));
    return neg ? -v : v;
  }

  Rat rational() {
    long num = integer();
    if (pos_ < s_.size() && s_[pos_] == '/' && pos_ + 1 < s_.size() &&
        std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
      ++pos_;
      long den = integer();
      Rat r(num, den);
      r.canonicalize();
      return r;
    }
    return Rat(num);
  }

  LinRat product() {
    LinRat f = factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        f = f * factor();
      } else if (c == '/') {
        ++pos_;
        f = f / factor();
      } else if (c == 'u' || c == '(' || c == '1') {
        f = f * factor();
      } else {
        return f;
      }
    }
  }

  LinRat factor() {
    LinRat base = atom();
    if (peek() == '^') {
      ++pos_;
      long e = integer();
      if (e < -64 || e > 64) fail("exponent out of range");
      base = base.pow(static_cast<int>(e));
    }
    return base;
  }

  LinRat atom() {
    char c = peek();
    if (c == 'u') {
      ++pos_;
      return LinRat::linear(Rat(0));
    }
    if (c == '1') {
      ++pos_;
      return LinRat::one();
    }
    if (!eat('(')) fail("expected 'u', '1' or '('");
    // Try the linear form "(u +- q)" first, else a nested product.
    std::size_t save = pos_;
    if (peek() == 'u') {
      ++pos_;
      char op = peek();
      if (op == ')') {
        ++pos_;
        return LinRat::linear(Rat(0));
      }
      if (op == '+' || op == '-') {
        ++pos_;
        std::size_t before = pos_;
        try {
          Rat q = rational();
          if (eat(')')) return LinRat::linear(op == '-' ? q : Rat(-q));
        } catch (const ParseError&) {
        }
        pos_ = before;
      }
      pos_ = save;
    }
    LinRat inner = product();
    if (!eat(')')) fail("expected ')'");
    return inner;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

LinRat LinRat::parse(const std::string& s) { return Parser(s).parse(); }

}  // namespace yang
