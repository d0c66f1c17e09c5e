#include "yang/lweight.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace yang {

Weight Weight::operator+(const Weight& o) const {
  Weight r = *this;
  for (size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
  return r;
}

Weight Weight::operator-(const Weight& o) const { return *this + (-o); }

Weight Weight::operator-() const {
  Weight r = *this;
  for (Rat& x : r.c) x = -x;
  return r;
}

Weight Weight::operator*(const Rat& s) const {
  Weight r = *this;
  for (Rat& x : r.c) x *= s;
  return r;
}

bool Weight::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](const Rat& x) { return x == 0; });
}

std::string Weight::str() const {
  std::string out = "(";
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) out += ",";
    out += rat_str(c[i]);
  }
  return out + ")";
}

LWeight LWeight::from_components(std::vector<LinRat> comps) {
  LWeight e;
  e.comps_ = std::move(comps);
  return e;
}

LWeight LWeight::with_comp(long i, LinRat f) const {
  LWeight e = *this;
  e.comps_[i] = std::move(f);
  return e;
}

LWeight LWeight::operator*(const LWeight& o) const {
  LWeight e = *this;
  for (long i = 0; i < rank(); ++i) e.comps_[i] = e.comps_[i] * o.comps_[i];
  return e;
}

LWeight LWeight::operator/(const LWeight& o) const { return *this * o.inverse(); }

LWeight LWeight::inverse() const {
  LWeight e = *this;
  for (LinRat& f : e.comps_) f = f.inverse();
  return e;
}

LWeight LWeight::pow(int k) const {
  LWeight e = *this;
  for (LinRat& f : e.comps_) f = f.pow(k);
  return e;
}

bool LWeight::is_one() const {
  return std::all_of(comps_.begin(), comps_.end(),
                     [](const LinRat& f) { return f.is_one(); });
}

LWeight LWeight::tau(const Rat& a) const {
  LWeight e = *this;
  for (LinRat& f : e.comps_) f = f.shifted(a);
  return e;
}

bool LWeight::in_monoid_D() const {
  return std::all_of(comps_.begin(), comps_.end(),
                     [](const LinRat& f) { return f.is_polynomial(); });
}

std::vector<long> LWeight::coweight() const {
  std::vector<long> k;
  k.reserve(comps_.size());
  for (const LinRat& f : comps_) k.push_back(f.degree());
  return k;
}

Weight LWeight::weight(const CartanData& cd) const {
  Weight w(rank());
  for (long i = 0; i < rank(); ++i) {
    Rat sub = 0;  // subleading coefficient of u^{k_i}(1 + sub*u^{-1} + ...)
    for (const auto& [b, m] : comps_[i].roots()) sub -= Rat(m) * b;
    w.c[i] = sub / cd.d[i];
  }
  return w;
}

LWeight psi(const CartanData& cd, long i, const Rat& a) {
  LWeight e(cd.rank);
  return e.with_comp(i, LinRat::linear(a));
}

LWeight gen_Y(const CartanData& cd, long i, const Rat& a) {
  Rat h = Rat(cd.d[i]) / 2;
  return psi(cd, i, a - h) / psi(cd, i, a + h);
}

LWeight gen_A(const CartanData& cd, long i, const Rat& a) {
  LWeight e(cd.rank);
  for (long j = 0; j < cd.rank; ++j) {
    const Rat& dij = cd.dij[i][j];
    if (dij == 0) continue;
    e = e * psi(cd, j, a - dij) / psi(cd, j, a + dij);
  }
  return e;
}

std::string LWeight::str() const {
  std::string out;
  for (long i = 0; i < rank(); ++i) {
    for (const auto& [b, m] : comps_[i].roots()) {
      if (!out.empty()) out += "*";
      out += "Psi(" + std::to_string(i + 1) + "," + rat_str(b) + ")";
      if (m != 1) out += "^" + std::to_string(m);
    }
  }
  return out.empty() ? "1" : out;
}

namespace {

// Parser for "Psi(1,3)*Psi(2,-1)^-1*A(1,0)^2" and "Y(1,1/2)"; "1" is identity.
class LWeightParser {
 public:
  LWeightParser(const CartanData& cd, const std::string& s) : cd_(cd), s_(s) {}

  LWeight parse() {
    LWeight e(cd_.rank);
    skip();
    if (peek() == '1' && !std::isalpha(look(1))) {
      ++pos_;
      skip();
      if (pos_ == s_.size()) return e;
      fail("unexpected input after '1'");
    }
    e = e * factor();
    while (eat('*')) e = e * factor();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("l-weight parse error at offset " + std::to_string(pos_) +
                     ": " + why);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  char look(std::size_t ahead) const {
    return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0';
  }

  bool eat(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  std::string token() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/' ||
            s_[pos_] == '-' || s_[pos_] == '+'))
      ++pos_;
    return s_.substr(start, pos_ - start);
  }

  long integer() {
    std::string t = token();
    try {
      return to_long(parse_rat(t));
    } catch (const std::exception&) {
      fail("expected integer, got '" + t + "'");
    }
  }

  LWeight factor() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    std::string kind = s_.substr(start, pos_ - start);
    if (!eat('(')) fail("expected '('");
    long i = integer();
    if (i < 1 || i > cd_.rank) fail("node out of range");
    if (!eat(',')) fail("expected ','");
    std::string t = token();
    Rat a;
    try {
      a = parse_rat(t);
    } catch (const ParseError&) {
      fail("bad rational '" + t + "'");
    }
    if (!eat(')')) fail("expected ')'");
    LWeight base(cd_.rank);
    if (kind == "Psi") {
      base = psi(cd_, i - 1, a);
    } else if (kind == "Y") {
      base = gen_Y(cd_, i - 1, a);
    } else if (kind == "A") {
      base = gen_A(cd_, i - 1, a);
    } else {
      fail("unknown generator '" + kind + "'");
    }
    if (eat('^')) {
      long e = integer();
      if (e < -64 || e > 64) fail("exponent out of range");
      base = base.pow(static_cast<int>(e));
    }
    return base;
  }

  const CartanData& cd_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

LWeight LWeight::parse(const CartanData& cd, const std::string& s) {
  return LWeightParser(cd, s).parse();
}

LWeight a_monomial_build(const CartanData& cd, const AMonomial& m) {
  LWeight e(cd.rank);
  for (const auto& [key, n] : m)
    e = e * gen_A(cd, key.first, key.second).pow(static_cast<int>(n));
  return e;
}

namespace {

// Psi-exponent support of an l-weight, keyed (position b, node j) so that the
// map order is the pivot order used by the solver.
using Support = std::map<std::pair<Rat, long>, long>;

Support support_of(const LWeight& e) {
  Support t;
  for (long j = 0; j < e.rank(); ++j)
    for (const auto& [b, m] : e.comp(j).roots()) t[{b, j}] = m;
  return t;
}

long l1(const Support& t) {
  long n = 0;
  for (const auto& [k, v] : t) n += std::abs(v);
  return n;
}

void add_to(Support& t, const std::pair<Rat, long>& key, long delta) {
  long& slot = t[key];
  slot += delta;
  if (slot == 0) t.erase(key);
}

// Complete rank-one solver: columns are +1 at a-d, -1 at a+d; within each
// residue class of b mod 2d the system is a telescoping prefix sum.
std::optional<AMonomial> decompose_rank_one(const CartanData& cd,
                                            const Support& target) {
  Rat d(cd.d[0]), step = 2 * d;
  std::map<Rat, std::vector<std::pair<Rat, long>>> classes;
  for (const auto& [key, v] : target) {
    Rat cls = key.first - step * rat_floor(key.first / step);
    classes[cls].push_back({key.first, v});
  }
  AMonomial sol;
  for (const auto& [cls, entries] : classes) {
    long m = 0;  // running prefix sum: n_{b+d} = m after position b
    for (size_t k = 0; k < entries.size(); ++k) {
      m += entries[k].second;
      if (m == 0) continue;
      if (k + 1 == entries.size()) return std::nullopt;  // never returns to 0
      for (Rat b = entries[k].first; b < entries[k + 1].first; b += step)
        sol[{0, b + d}] += m;
    }
  }
  return sol;
}

// One column of the general system: the entries of A_{i,a} in Psi coordinates.
std::vector<std::pair<std::pair<Rat, long>, int>> column(const CartanData& cd,
                                                         long i, const Rat& a) {
  std::vector<std::pair<std::pair<Rat, long>, int>> col;
  for (long j = 0; j < cd.rank; ++j) {
    const Rat& dij = cd.dij[i][j];
    if (dij == 0) continue;
    col.push_back({{a - dij, j}, 1});
    col.push_back({{a + dij, j}, -1});
  }
  return col;
}

// Bounded depth-first search peeling the minimal support key. Each step
// applies one unit of a generator that reduces the pivot coefficient; wrong
// branches are pruned by an L1 bound and memoized.
class GeneralSolver {
 public:
  GeneralSolver(const CartanData& cd, Support target)
      : cd_(cd), residual_(std::move(target)) {
    budget_ = 3 * l1(residual_) + 16;
    for (long i = 0; i < cd_.rank; ++i) {
      long w = 0;
      for (long j = 0; j < cd_.rank; ++j)
        if (cd_.dij[i][j] != 0) w += 2;
      max_col_ = std::max(max_col_, w);
    }
  }

  std::optional<AMonomial> run() {
    if (!solve(budget_)) return std::nullopt;
    AMonomial out;
    for (const auto& [k, v] : sol_)
      if (v != 0) out[k] = v;
    return out;
  }

 private:
  bool solve(long steps_left) {
    if (residual_.empty()) return true;
    if (steps_left <= 0) return false;
    if (l1(residual_) > max_col_ * steps_left) return false;
    if (failed_.count(residual_)) return false;

    auto [pivot, c] = *residual_.begin();
    long sgn = c > 0 ? 1 : -1;
    struct Move {
      std::pair<Rat, long> lowest_new;  // lowest key the move adds below pivot
      bool clean;
      long i;
      Rat a;
      long delta;
    };
    std::vector<Move> moves;
    for (long i = 0; i < cd_.rank; ++i) {
      const Rat& dij = cd_.dij[i][pivot.second];
      if (dij == 0) continue;
      for (int side : {1, -1}) {
        // side=+1: the +1 entry of the column meets the pivot (a = b + dij);
        // side=-1: the -1 entry does (a = b - dij).
        Move mv{pivot, true, i, pivot.first + (side > 0 ? dij : -dij),
                side > 0 ? sgn : -sgn};
        for (const auto& [key, val] : column(cd_, i, mv.a)) {
          if (key >= pivot) continue;
          if (mv.clean || key < mv.lowest_new) mv.lowest_new = key;
          mv.clean = false;
        }
        moves.push_back(std::move(mv));
      }
    }
    std::sort(moves.begin(), moves.end(), [](const Move& x, const Move& y) {
      if (x.clean != y.clean) return x.clean;
      if (x.lowest_new != y.lowest_new) return x.lowest_new > y.lowest_new;
      return std::tie(x.i, x.a, x.delta) < std::tie(y.i, y.a, y.delta);
    });

    for (const Move& mv : moves) {
      auto col = column(cd_, mv.i, mv.a);
      for (const auto& [key, val] : col) add_to(residual_, key, -mv.delta * val);
      sol_[{mv.i, mv.a}] += mv.delta;
      if (solve(steps_left - 1)) return true;
      sol_[{mv.i, mv.a}] -= mv.delta;
      for (const auto& [key, val] : col) add_to(residual_, key, mv.delta * val);
    }
    failed_.insert(residual_);
    return false;
  }

  const CartanData& cd_;
  Support residual_;
  AMonomial sol_;
  std::set<Support> failed_;
  long budget_ = 0;
  long max_col_ = 0;
};

}  // namespace

std::optional<AMonomial> a_monomial_decompose(const CartanData& cd,
                                              const LWeight& f) {
  if (f.rank() != cd.rank)
    throw VerificationError("l-weight rank does not match Cartan data");
  Support target = support_of(f);
  if (target.empty()) return AMonomial{};
  std::optional<AMonomial> sol;
  if (cd.rank == 1) {
    sol = decompose_rank_one(cd, target);
  } else {
    sol = GeneralSolver(cd, std::move(target)).run();
  }
  if (sol && !(a_monomial_build(cd, *sol) == f))
    throw VerificationError("decomposition failed the reassembly check");
  return sol;
}

}  // namespace yang
