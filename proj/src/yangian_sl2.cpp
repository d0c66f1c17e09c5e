#include "yang/yangian_sl2.hpp"

#include <algorithm>
#include <optional>

namespace yang {

std::string Gen::str() const {
  switch (kind) {
    case GenKind::XMinus:
      return "x-_" + std::to_string(n);
    case GenKind::Xi:
      return "xi_" + std::to_string(n);
    default:
      return "x+_" + std::to_string(n);
  }
}

long word_weight(const Word& w) {
  long wt = 0;
  for (const Gen& g : w) {
    if (g.kind == GenKind::XPlus) ++wt;
    if (g.kind == GenKind::XMinus) --wt;
  }
  return wt;
}

Element Element::one() {
  Element e;
  e.terms[{}] = 1;
  return e;
}

void Element::add(const Word& w, const Rat& c) {
  if (c == 0) return;
  Rat& slot = terms[w];
  slot += c;
  if (slot == 0) terms.erase(w);
}

void Element::add_scaled(const Element& o, const Rat& c) {
  for (const auto& [w, k] : o.terms) add(w, k * c);
}

Element Element::operator+(const Element& o) const {
  Element r = *this;
  r.add_scaled(o, 1);
  return r;
}

Element Element::operator-(const Element& o) const {
  Element r = *this;
  r.add_scaled(o, -1);
  return r;
}

Element Element::operator*(const Element& o) const {
  Element r;
  for (const auto& [w1, c1] : terms)
    for (const auto& [w2, c2] : o.terms) {
      Word w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      r.add(w, c1 * c2);
    }
  return r;
}

Element Element::scaled(const Rat& c) const {
  Element r;
  r.add_scaled(*this, c);
  return r;
}

std::string Element::str() const {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : terms) {
    if (!out.empty()) out += " + ";
    std::string word;
    for (const Gen& g : w) word += (word.empty() ? "" : " ") + g.str();
    if (word.empty()) word = "1";
    out += (c == 1 ? "" : rat_str(c) + "*") + word;
  }
  return out;
}

Element ShiftedAlgebra::xplus(long n) const {
  if (n < 0) throw VerificationError("x+ index must be a natural number");
  Element e;
  e.terms[{Gen{GenKind::XPlus, n}}] = 1;
  return e;
}

Element ShiftedAlgebra::xminus(long n) const {
  if (n < 0) throw VerificationError("x- index must be a natural number");
  Element e;
  e.terms[{Gen{GenKind::XMinus, n}}] = 1;
  return e;
}

Element ShiftedAlgebra::xi(long p) const {
  if (p < xi_floor() - 1) return Element::zero();
  if (p == xi_floor() - 1) return Element::one();
  Element e;
  e.terms[{Gen{GenKind::Xi, p}}] = 1;
  return e;
}

namespace {

constexpr size_t kNone = static_cast<size_t>(-1);

bool pair_ordered(const Gen& a, const Gen& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  return a.n <= b.n;
}

size_t find_violation(const Word& w, NormalOrder order) {
  if (order == NormalOrder::XMinusAscending) {
    for (const Gen& g : w)
      if (g.kind != GenKind::XMinus)
        throw VerificationError("x- ordering applies to words in the x- alone");
  }
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (!pair_ordered(w[i], w[i + 1])) return i;
  return kNone;
}

// One rewriting step on an adjacent out-of-order pair, as (coefficient,
// replacement letters). The xi letters are emitted through push_xi so the
// unit xi_{floor-1} disappears and anything below kills the term.
class Rewriter {
 public:
  explicit Rewriter(long floor) : floor_(floor) {}

  std::vector<std::pair<Rat, Word>> step(const Gen& a, const Gen& b) const {
    out_.clear();
    if (a.kind == GenKind::XPlus && b.kind == GenKind::XMinus) {
      begin(1).x(GenKind::XMinus, b.n).x(GenKind::XPlus, a.n).done();
      begin(1).xi(a.n + b.n).done();
    } else if (a.kind == GenKind::XPlus && b.kind == GenKind::Xi) {
      // x+_n xi_p from the Cartan-Drinfeld ladder, descending in p.
      long n = a.n, p = b.n;
      begin(1).xi(p).x(GenKind::XPlus, n).done();
      begin(-1).xi(p - 1).x(GenKind::XPlus, n + 1).done();
      begin(1).x(GenKind::XPlus, n + 1).xi(p - 1).done();
      begin(-1).xi(p - 1).x(GenKind::XPlus, n).done();
      begin(-1).x(GenKind::XPlus, n).xi(p - 1).done();
    } else if (a.kind == GenKind::Xi && b.kind == GenKind::XMinus) {
      long p = a.n, n = b.n;
      begin(1).x(GenKind::XMinus, n).xi(p).done();
      begin(1).xi(p - 1).x(GenKind::XMinus, n + 1).done();
      begin(-1).x(GenKind::XMinus, n + 1).xi(p - 1).done();
      begin(-1).xi(p - 1).x(GenKind::XMinus, n).done();
      begin(-1).x(GenKind::XMinus, n).xi(p - 1).done();
    } else if (a.kind == GenKind::Xi && b.kind == GenKind::Xi) {
      begin(1).x(GenKind::Xi, b.n).x(GenKind::Xi, a.n).done();
    } else {
      // Like generators out of order; sign +1 for x^+, -1 for x^-.
      Rat sgn = a.kind == GenKind::XPlus ? 1 : -1;
      GenKind k = a.kind;
      if (a.n == b.n + 1) {
        begin(1).x(k, b.n).x(k, a.n).done();
        begin(sgn).x(k, b.n).x(k, b.n).done();
      } else {
        begin(1).x(k, b.n).x(k, a.n).done();
        begin(1).x(k, a.n - 1).x(k, b.n + 1).done();
        begin(-1).x(k, b.n + 1).x(k, a.n - 1).done();
        begin(sgn).x(k, a.n - 1).x(k, b.n).done();
        begin(sgn).x(k, b.n).x(k, a.n - 1).done();
      }
    }
    return out_;
  }

 private:
  const Rewriter& begin(const Rat& c) const {
    cur_ = {c, {}};
    dead_ = false;
    return *this;
  }
  const Rewriter& x(GenKind k, long n) const {
    cur_.second.push_back(Gen{k, n});
    return *this;
  }
  const Rewriter& xi(long p) const {
    if (p < floor_ - 1) dead_ = true;
    else if (p >= floor_) cur_.second.push_back(Gen{GenKind::Xi, p});
    return *this;
  }
  void done() const {
    if (!dead_) out_.push_back(cur_);
  }

  long floor_;
  mutable std::pair<Rat, Word> cur_;
  mutable bool dead_ = false;
  mutable std::vector<std::pair<Rat, Word>> out_;
};

class Straightener {
 public:
  Straightener(long floor, NormalOrder order)
      : rules_(floor), order_(order) {}

  Element normal(const Word& w) {
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    size_t i = find_violation(w, order_);
    Element acc;
    if (i == kNone) {
      acc.terms[w] = 1;
    } else {
      if (--fuel_ < 0) throw VerificationError("straightening did not terminate");
      for (const auto& [c, mid] : rules_.step(w[i], w[i + 1])) {
        Word nw(w.begin(), w.begin() + i);
        nw.insert(nw.end(), mid.begin(), mid.end());
        nw.insert(nw.end(), w.begin() + i + 2, w.end());
        acc.add_scaled(normal(nw), c);
      }
    }
    memo_[w] = acc;
    return acc;
  }

 private:
  Rewriter rules_;
  NormalOrder order_;
  std::map<Word, Element> memo_;
  long fuel_ = 20'000'000;
};

}  // namespace

bool ShiftedAlgebra::is_normal(const Word& w, NormalOrder order) const {
  return find_violation(w, order) == kNone;
}

Element ShiftedAlgebra::straighten(const Element& el, NormalOrder order) const {
  Straightener s(xi_floor(), order);
  Element out;
  for (const auto& [w, c] : el.terms) out.add_scaled(s.normal(w), c);
  return out;
}

Element shift_hom(long zeta, long eta, const Element& el) {
  if (zeta > 0 || eta > 0)
    throw VerificationError("shift homomorphism needs antidominant arguments");
  Element out;
  for (const auto& [w, c] : el.terms) {
    Word nw;
    nw.reserve(w.size());
    for (const Gen& g : w) {
      long d = g.kind == GenKind::XPlus  ? zeta
               : g.kind == GenKind::XMinus ? eta
                                           : zeta + eta;
      nw.push_back(Gen{g.kind, g.n - d});
    }
    out.add(nw, c);
  }
  return out;
}

std::map<Word, Poly> tau_poly(const ShiftedAlgebra& A, const Element& el) {
  std::map<Word, Poly> out;
  for (const auto& [w, c] : el.terms) {
    std::map<Word, Poly> acc{{{}, Poly::from_coeffs({c})}};
    for (const Gen& g : w) {
      // Letter expansion sum_n binom(p, n) X_{p-n} z^n, cut off below the
      // generator range; xi hits the unit exactly once at p - n = floor - 1.
      std::vector<std::pair<Word, Poly>> letter;
      long low = g.kind == GenKind::Xi ? A.xi_floor() - 1 : 0;
      for (long q = g.n; q >= low; --q) {
        long n = g.n - q;
        Rat cf = binom(Rat(g.n), n);
        if (cf == 0) continue;
        std::vector<Rat> zpow(n + 1, Rat(0));
        zpow[n] = cf;
        Word lw;
        if (!(g.kind == GenKind::Xi && q == A.xi_floor() - 1))
          lw.push_back(Gen{g.kind, q});
        letter.push_back({lw, Poly::from_coeffs(zpow)});
      }
      std::map<Word, Poly> next;
      for (const auto& [pw, pp] : acc)
        for (const auto& [lw, lp] : letter) {
          Word nw = pw;
          nw.insert(nw.end(), lw.begin(), lw.end());
          Poly& slot = next[nw];
          slot = slot + pp * lp;
        }
      acc = std::move(next);
    }
    for (const auto& [nw, pp] : acc) {
      Poly& slot = out[nw];
      slot = slot + pp;
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == Poly() ? out.erase(it) : std::next(it);
  return out;
}

Element tau(const ShiftedAlgebra& A, const Rat& a, const Element& el) {
  Element out;
  for (const auto& [w, p] : tau_poly(A, el)) out.add(w, p.eval(a));
  return out;
}

}  // namespace yang
