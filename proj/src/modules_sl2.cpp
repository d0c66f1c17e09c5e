#include "yang/modules_sl2.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>
#include <utility>

#include "yang/cartan.hpp"
#include "yang/qmat.hpp"
#include "yang/series.hpp"

namespace yang {

void ActColumn::add(long row, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = v.emplace(row, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) v.erase(it);
  }
}

ActColumn& ActColumn::add_scaled(const ActColumn& o, const Rat& c) {
  poisoned = poisoned || o.poisoned;
  if (c != 0)
    for (const auto& [row, val] : o.v) add(row, Rat(val * c));
  return *this;
}

ActColumn SparseMat::apply(const ActColumn& x) const {
  if (x.poisoned) return ActColumn::poison();
  ActColumn r;
  for (const auto& [j, c] : x.v) {
    const ActColumn& col = cols.at(static_cast<std::size_t>(j));
    if (col.poisoned) return ActColumn::poison();
    r.add_scaled(col, c);
  }
  return r;
}

const QRat* SeriesTables::find(GenKind k, long row, long col) const {
  const auto& m = entry[static_cast<int>(k)];
  auto it = m.find({row, col});
  return it == m.end() ? nullptr : &it->second;
}

void SeriesTables::set(GenKind k, long row, long col, QRat f) {
  if (f.is_zero()) return;
  entry[static_cast<int>(k)].insert_or_assign({row, col}, std::move(f));
}

namespace {

// Weight functional of a monic rational l-weight: minus the subleading
// expansion coefficient, i.e. sum of poles minus sum of zeros.
Rat lweight_weight(const LinRat& f) {
  Rat w(0);
  for (const auto& [a, e] : f.roots()) w -= a * Rat(e);
  return w;
}

// Mode n of a rational entry f = sum_n f_n u^{-n-1}; negative n reads the
// polynomial part.
Rat entry_mode(const QRat& f, long n) {
  if (f.is_zero()) return Rat(0);
  return f.at_infinity(std::max(n + 2, 2L)).coeff(-n - 1);
}

std::string word_label(const Word& w) {
  if (w.empty()) return "w";
  std::string s = "x-[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w[i].n);
  }
  return s + "]";
}

// Lazily extended mode cache of a fixed l-weight: e_p = 1 at p = floor-1 and
// vanishes below.
class EModes {
 public:
  explicit EModes(LinRat e) : e_(std::move(e)), floor_(-e_.degree()) {}

  long floor() const { return floor_; }
  const LinRat& f() const { return e_; }

  Rat at(long p) const {
    if (p < floor_ - 1) return Rat(0);
    if (p == floor_ - 1) return Rat(1);
    std::scoped_lock lk(mu_);
    if (p - floor_ >= static_cast<long>(cache_.size())) {
      const LaurentSeries s = expand_at_infinity(e_, p + 4);
      for (long q = floor_ + static_cast<long>(cache_.size()); q <= p; ++q)
        cache_.push_back(s.coeff(-q - 1));
    }
    return cache_[p - floor_];
  }

 private:
  LinRat e_;
  long floor_;
  mutable std::mutex mu_;
  mutable std::vector<Rat> cache_;
};

// Generator modes acting on the PBW span of the highest-weight vector:
// vectors are exact rational combinations of ascending x^- words applied to
// omega. The recursions are the straightening rules of the shifted algebra,
// memoized on canonical (mode, sorted word) states so repeated module actions
// share all intermediate normal orderings. Not thread-safe; callers lock.
class PbwOps {
 public:
  using Vec = std::map<Word, Rat>;

  explicit PbwOps(LinRat e) : e_(std::move(e)) {}

  long floor() const { return e_.floor(); }
  const LinRat& lweight() const { return e_.f(); }
  Rat emode(long p) const { return e_.at(p); }

  Vec gen_word(GenKind k, long n, const Word& w) const {
    switch (k) {
      case GenKind::XMinus:
        return xminus_word(n, w);
      case GenKind::Xi:
        return xi_word(n, w);
      case GenKind::XPlus:
        return xplus_word(n, w);
    }
    return {};
  }

  Vec gen_apply(GenKind k, long n, const Vec& v) const {
    Vec out;
    for (const auto& [w, c] : v) axpy(out, gen_word(k, n, w), c);
    return out;
  }

  static void axpy(Vec& y, const Vec& x, const Rat& c) {
    if (c == 0) return;
    for (const auto& [w, v] : x) {
      auto [it, fresh] = y.emplace(w, Rat(v * c));
      if (!fresh) {
        it->second += v * c;
        if (it->second == 0) y.erase(it);
      }
    }
  }

 private:
  static Word cons(long a, const Word& w) {
    Word out;
    out.reserve(w.size() + 1);
    out.push_back(Gen{GenKind::XMinus, a});
    out.insert(out.end(), w.begin(), w.end());
    return out;
  }

  const Vec& xminus_word(long a, const Word& w) const {
    const auto key = std::make_pair(a, w);
    auto it = xm_.find(key);
    if (it != xm_.end()) return it->second;
    Vec out;
    if (w.empty() || a <= w.front().n) {
      out.emplace(cons(a, w), Rat(1));
    } else {
      const long b = w.front().n;
      const Word rest(w.begin() + 1, w.end());
      if (a == b + 1) {
        // x_{b+1} x_b = x_b x_{b+1} - x_b x_b applied to rest.
        axpy(out, xminus_apply(b, xminus_word(a, rest)), Rat(1));
        axpy(out, xminus_apply(b, xminus_word(b, rest)), Rat(-1));
      } else {
        axpy(out, xminus_apply(b, xminus_word(a, rest)), Rat(1));
        axpy(out, xminus_apply(a - 1, xminus_word(b + 1, rest)), Rat(1));
        axpy(out, xminus_apply(b + 1, xminus_word(a - 1, rest)), Rat(-1));
        axpy(out, xminus_apply(a - 1, xminus_word(b, rest)), Rat(-1));
        axpy(out, xminus_apply(b, xminus_word(a - 1, rest)), Rat(-1));
      }
    }
    return xm_.emplace(key, std::move(out)).first->second;
  }

  Vec xminus_apply(long a, const Vec& v) const {
    Vec out;
    for (const auto& [w, c] : v) axpy(out, xminus_word(a, w), c);
    return out;
  }

  const Vec& xi_word(long p, const Word& w) const {
    const auto key = std::make_pair(p, w);
    auto it = xi_.find(key);
    if (it != xi_.end()) return it->second;
    Vec out;
    const long F = e_.floor();
    if (p == F - 1) {
      out.emplace(w, Rat(1));
    } else if (p >= F) {
      if (w.empty()) {
        const Rat ep = e_.at(p);
        if (ep != 0) out.emplace(Word{}, ep);
      } else {
        const long a = w.front().n;
        const Word rest(w.begin() + 1, w.end());
        axpy(out, xminus_apply(a, xi_word(p, rest)), Rat(1));
        axpy(out, xi_apply(p - 1, xminus_word(a + 1, rest)), Rat(1));
        axpy(out, xminus_apply(a + 1, xi_word(p - 1, rest)), Rat(-1));
        axpy(out, xi_word(p - 1, w), Rat(-1));
        axpy(out, xminus_apply(a, xi_word(p - 1, rest)), Rat(-1));
      }
    }
    return xi_.emplace(key, std::move(out)).first->second;
  }

  Vec xi_apply(long p, const Vec& v) const {
    Vec out;
    for (const auto& [w, c] : v) axpy(out, xi_word(p, w), c);
    return out;
  }

  const Vec& xplus_word(long m, const Word& w) const {
    const auto key = std::make_pair(m, w);
    auto it = xp_.find(key);
    if (it != xp_.end()) return it->second;
    Vec out;
    if (!w.empty()) {
      const long a = w.front().n;
      const Word rest(w.begin() + 1, w.end());
      axpy(out, xminus_apply(a, xplus_word(m, rest)), Rat(1));
      axpy(out, xi_word(m + a, rest), Rat(1));
    }
    return xp_.emplace(key, std::move(out)).first->second;
  }

  EModes e_;
  mutable std::map<std::pair<long, Word>, Vec> xm_, xi_, xp_;
};

QMat invert(const QMat& a) {
  const long n = a.rows();
  if (n != a.cols()) throw VerificationError("inverse of a non-square matrix");
  QMat aug(n, 2 * n);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = 1;
  }
  const std::vector<long> piv = aug.rref();
  for (long i = 0; i < n; ++i)
    if (i >= static_cast<long>(piv.size()) || piv[i] != i)
      throw VerificationError("singular pairing matrix");
  QMat inv(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

}  // namespace

ModuleRealization::ModuleRealization(FamilySpec fam, long shift, long depth,
                                     LinRat top, std::vector<BasisVec> basis,
                                     std::shared_ptr<const ActionEngine> engine,
                                     std::optional<long> index_cap)
    : fam_(std::move(fam)),
      shift_(shift),
      depth_(depth),
      top_(std::move(top)),
      basis_(std::move(basis)),
      engine_(std::move(engine)),
      index_cap_(index_cap) {
  if (depth_ < 0) throw VerificationError("depth must be nonnegative");
  if (!engine_) throw VerificationError("module realization needs an engine");
  blocks_.assign(depth_ + 1, {});
  for (long i = 0; i < dim(); ++i) {
    const long k = basis_[i].depth;
    if (k < 0 || k > depth_)
      throw VerificationError("basis vector outside the depth window");
    blocks_[k].push_back(i);
  }
}

const std::vector<long>& ModuleRealization::block(long k) const {
  if (k < 0 || k > depth_) throw VerificationError("block index out of range");
  return blocks_[k];
}

Rat ModuleRealization::block_weight(long k) const {
  if (k < 0 || k > depth_) throw VerificationError("block index out of range");
  return lweight_weight(top_) - Rat(2 * k);
}

std::vector<long> ModuleRealization::dims() const {
  std::vector<long> d(depth_ + 1);
  for (long k = 0; k <= depth_; ++k) d[k] = static_cast<long>(blocks_[k].size());
  return d;
}

ActColumn ModuleRealization::act(GenKind k, long n, long col) const {
  if (col < 0 || col >= dim()) throw VerificationError("column out of range");
  return engine_->act(k, n, col);
}

SparseMat ModuleRealization::mode_matrix(GenKind k, long n) const {
  SparseMat m;
  m.rows = dim();
  m.cols.resize(dim());
  for (long c = 0; c < dim(); ++c) m.cols[c] = act(k, n, c);
  return m;
}

// ---------------------------------------------------------------------------
// Closed families given by rational series tables.

namespace {

class ExplicitEngine final : public ActionEngine {
 public:
  ExplicitEngine(SeriesTables t, std::set<std::pair<GenKind, long>> poisons,
                 long dim)
      : tables_(std::move(t)), poisons_(std::move(poisons)) {
    for (int k = 0; k < 3; ++k) {
      cols_[k].assign(dim, {});
      for (const auto& [key, f] : tables_.entry[k]) {
        const auto& [row, col] = key;
        if (row < 0 || row >= dim || col < 0 || col >= dim)
          throw VerificationError("series table entry out of range");
        cols_[k][col].emplace_back(row, f);
      }
    }
  }

  ActColumn act(GenKind k, long n, long col) const override {
    if (poisons_.count({k, col})) return ActColumn::poison();
    ActColumn r;
    for (const auto& [row, f] : cols_[static_cast<int>(k)][col])
      r.add(row, entry_mode(f, n));
    return r;
  }

  const SeriesTables* series() const override { return &tables_; }
  const std::set<std::pair<GenKind, long>>& poisons() const { return poisons_; }

 private:
  SeriesTables tables_;
  std::set<std::pair<GenKind, long>> poisons_;
  std::vector<std::vector<std::pair<long, QRat>>> cols_[3];
};

QRat one_over(const Rat& a) {
  return QRat::from(Poly(Rat(1)), {{a, 1}});
}

ModuleRealization build_tabled(FamilySpec fam, long shift, long depth, LinRat top,
                               std::vector<BasisVec> basis, SeriesTables t,
                               std::set<std::pair<GenKind, long>> poisons) {
  const long dim = static_cast<long>(basis.size());
  auto eng = std::make_shared<ExplicitEngine>(std::move(t), std::move(poisons), dim);
  return ModuleRealization(std::move(fam), shift, depth, std::move(top),
                           std::move(basis), std::move(eng));
}

// Chain basis v_i = (x^-_0)^i w / (i! prod_{j<i} kappa_j) shared by the
// Lminus / frakL / finite families; kappa_i is the x^- ladder coefficient at
// the principal mode.
std::optional<Word> chain_word(long i) {
  Word w(static_cast<std::size_t>(i), Gen{GenKind::XMinus, 0});
  return w;
}

}  // namespace

ModuleRealization make_lplus(const Rat& a, long depth) {
  if (depth < 0) throw VerificationError("depth must be nonnegative");
  SeriesTables t;
  t.set(GenKind::Xi, 0, 0, QRat(Poly::linear(a)));
  std::vector<BasisVec> basis{{0, Rat(-a), "w", Word{}, Rat(1)}};
  return build_tabled({"Lplus", {a}, {}}, 1, depth, LinRat::linear(a),
                      std::move(basis), std::move(t), {});
}

ModuleRealization make_n(const Rat& a, long depth) {
  if (depth < 1) throw VerificationError("the two-dimensional module needs depth >= 1");
  SeriesTables t;
  t.set(GenKind::XPlus, 0, 1, one_over(a));
  t.set(GenKind::XMinus, 1, 0, one_over(a));
  t.set(GenKind::Xi, 0, 0, QRat::from(Poly::linear(Rat(a - 1)), {{a, 1}}));
  t.set(GenKind::Xi, 1, 1, QRat::from(Poly::linear(Rat(a + 1)), {{a, 1}}));
  std::vector<BasisVec> basis{
      {0, Rat(1), "e1", Word{}, Rat(1)},
      {1, Rat(-1), "e2", Word{Gen{GenKind::XMinus, 0}}, Rat(1)}};
  const LinRat top = LinRat::from_roots({{Rat(a - 1), 1}, {a, -1}});
  return build_tabled({"N", {a}, {}}, 0, depth, top, std::move(basis),
                      std::move(t), {});
}

namespace {

// Shared chain builder: x^-_n v_i = kap_i (b-i)^n v_{i+1},
// x^+_n v_i = (b-i+1)^n v_{i-1}, xi diagonal with the stated tables.
ModuleRealization build_chain(FamilySpec fam, long shift, const LinRat& top,
                              const Rat& b, const std::vector<Rat>& kap,
                              const Poly& xi_num, long depth, long dim) {
  SeriesTables t;
  std::vector<BasisVec> basis;
  std::set<std::pair<GenKind, long>> poisons;
  Rat scale(1);
  bool reachable = true;
  for (long i = 0; i < dim; ++i) {
    BasisVec v;
    v.depth = i;
    v.weight = lweight_weight(top) - Rat(2 * i);
    v.label = "v" + std::to_string(i);
    if (reachable) {
      v.word = chain_word(i);
      v.scale = scale;
    }
    basis.push_back(std::move(v));
    t.set(GenKind::Xi, i, i,
          QRat::from(xi_num, {{Rat(b - i + 1), 1}, {Rat(b - i), 1}}));
    if (i + 1 < dim && kap[i] != 0)
      t.set(GenKind::XMinus, i + 1, i, QRat::from(Poly(kap[i]), {{Rat(b - i), 1}}));
    if (i >= 1) t.set(GenKind::XPlus, i - 1, i, one_over(Rat(b - i + 1)));
    if (reachable && i + 1 < dim) {
      if (kap[i] == 0) reachable = false;
      else scale /= kap[i];
    }
  }
  if (kap[dim - 1] != 0) poisons.insert({GenKind::XMinus, dim - 1});
  const long depth_out = depth;
  return build_tabled(std::move(fam), shift, depth_out, top, std::move(basis),
                      std::move(t), std::move(poisons));
}

}  // namespace

ModuleRealization make_lminus(const Rat& b, long depth) {
  if (depth < 0) throw VerificationError("depth must be nonnegative");
  const long dim = depth + 1;
  std::vector<Rat> kap;
  for (long i = 0; i < dim; ++i) kap.push_back(Rat(i + 1));
  const LinRat top = LinRat::from_roots({{b, -1}});
  return build_chain({"Lminus", {b}, {}}, -1, top, b, kap, Poly::linear(Rat(b + 1)),
                     depth, dim);
}

ModuleRealization make_frakl(const Rat& a, const Rat& b, long depth) {
  if (depth < 0) throw VerificationError("depth must be nonnegative");
  const long dim = depth + 1;
  std::vector<Rat> kap;
  for (long i = 0; i < dim; ++i) kap.push_back(Rat((b - a - i) * (i + 1)));
  const LinRat top = LinRat::from_roots({{a, 1}, {b, -1}});
  return build_chain({"FrakL", {a, b}, {}}, 0, top, b, kap,
                     Poly::from_roots({Rat(b + 1), a}), depth, dim);
}

ModuleRealization make_l_finite(const Rat& a, const Rat& b, long depth) {
  if (depth < 0) throw VerificationError("depth must be nonnegative");
  const Rat diff = b - a;
  if (diff.get_den() != 1 || diff < 0)
    throw VerificationError("the finite family needs b - a a nonnegative integer");
  const long m = static_cast<long>(diff.get_num().get_si());
  const long dim = std::min(depth, m) + 1;
  std::vector<Rat> kap;
  for (long i = 0; i < dim; ++i) kap.push_back(Rat((b - a - i) * (i + 1)));
  const LinRat top = LinRat::from_roots({{a, 1}, {b, -1}});
  return build_chain({"L", {a, b}, {}}, 0, top, b, kap,
                     Poly::from_roots({Rat(b + 1), a}), depth, dim);
}

ModuleRealization make_explicit(const std::string& family,
                                const std::vector<Rat>& params, long depth) {
  auto need = [&](std::size_t n) {
    if (params.size() != n)
      throw VerificationError("family " + family + " takes " + std::to_string(n) +
                              " parameter(s)");
  };
  if (family == "Lplus") {
    need(1);
    return make_lplus(params[0], depth);
  }
  if (family == "N") {
    need(1);
    return make_n(params[0], depth);
  }
  if (family == "FrakL") {
    need(2);
    return make_frakl(params[0], params[1], depth);
  }
  if (family == "L") {
    need(2);
    return make_l_finite(params[0], params[1], depth);
  }
  if (family == "Lminus") {
    need(1);
    return make_lminus(params[0], depth);
  }
  throw VerificationError("unknown explicit family: " + family);
}

// ---------------------------------------------------------------------------
// Verma modules over the PBW window.

namespace {

long word_total(const Word& w) {
  long t = 0;
  for (const Gen& g : w) t += g.n;
  return t;
}

class PbwEngine final : public ActionEngine {
 public:
  PbwEngine(const LinRat& e, long depth, long cap)
      : ops_(e), depth_(depth), cap_(cap) {
    Word cur;
    enumerate(cur, 0, 0);
  }

  const std::vector<Word>& words() const { return words_; }

  ActColumn act(GenKind k, long n, long col) const override {
    const Word& w = words_[col];
    const long len = static_cast<long>(w.size());
    const long F = ops_.floor();
    switch (k) {
      case GenKind::XMinus:
        if (n < 0) return {};
        if (len == depth_ || n > cap_) return ActColumn::poison();
        break;
      case GenKind::XPlus:
        if (n < 0 || len == 0) return {};
        if (len >= 2 && n + word_total(w) - F + 1 > cap_) return ActColumn::poison();
        break;
      case GenKind::Xi:
        if (len >= 1 && n >= F && n + word_total(w) - F + 1 > cap_)
          return ActColumn::poison();
        break;
    }
    std::scoped_lock lk(mu_);
    const PbwOps::Vec img = ops_.gen_word(k, n, w);
    ActColumn r;
    for (const auto& [w2, c] : img) {
      auto it = index_.find(w2);
      if (it == index_.end()) return ActColumn::poison();
      r.add(it->second, c);
    }
    return r;
  }

 private:
  void enumerate(Word& cur, long len, long min) {
    index_.emplace(cur, static_cast<long>(words_.size()));
    words_.push_back(cur);
    if (len == depth_) return;
    for (long n = min; n <= cap_; ++n) {
      cur.push_back(Gen{GenKind::XMinus, n});
      enumerate(cur, len + 1, n);
      cur.pop_back();
    }
  }

  PbwOps ops_;
  long depth_;
  long cap_;
  std::vector<Word> words_;
  std::map<Word, long> index_;
  mutable std::mutex mu_;
};

}  // namespace

ModuleRealization make_verma(const LinRat& e, long depth, long index_cap) {
  if (depth < 0) throw VerificationError("depth must be nonnegative");
  const long cap = index_cap < 0 ? depth + 2 : index_cap;
  auto eng = std::make_shared<PbwEngine>(e, depth, cap);
  // The engine indexes columns in enumeration order; the realization re-sorts
  // by depth, so rebuild the basis in engine order instead.
  std::vector<BasisVec> basis;
  const Rat topw = lweight_weight(e);
  for (const Word& w : eng->words()) {
    BasisVec v;
    v.depth = static_cast<long>(w.size());
    v.weight = topw - Rat(2 * v.depth);
    v.label = word_label(w);
    v.word = w;
    basis.push_back(std::move(v));
  }
  return ModuleRealization({"Verma", {}, {e}}, e.degree(), depth, e,
                           std::move(basis), std::move(eng), cap);
}

// ---------------------------------------------------------------------------
// Weyl modules: the Verma quotient by the principal part of s(u) x^-(u).

namespace {

class WeylEngine final : public ActionEngine {
 public:
  WeylEngine(const LinRat& r, const LinRat& s, long depth)
      : ops_(r / s),
        depth_(depth),
        nred_(s.num_degree()),
        bcoef_(s.num_poly().coeffs()) {
    Word cur;
    enumerate(cur, 0, 0);
  }

  const std::vector<Word>& words() const { return words_; }

  ActColumn act(GenKind k, long n, long col) const override {
    std::scoped_lock lk(mu_);
    const Word& w = words_[col];
    if ((k != GenKind::Xi && n < 0) || (k == GenKind::XPlus && w.empty()))
      return {};
    const PbwOps::Vec img = ops_.gen_word(k, n, w);
    ActColumn r;
    for (const auto& [w2, c] : img) {
      for (const auto& [w3, c3] : reduced_word(w2)) {
        auto it = index_.find(w3);
        if (it == index_.end()) return ActColumn::poison();
        r.add(it->second, Rat(c * c3));
      }
    }
    return r;
  }

 private:
  void enumerate(Word& cur, long len, long min) {
    index_.emplace(cur, static_cast<long>(words_.size()));
    words_.push_back(cur);
    if (len == depth_) return;
    for (long n = min; n < nred_; ++n) {
      cur.push_back(Gen{GenKind::XMinus, n});
      enumerate(cur, len + 1, n);
      cur.pop_back();
    }
  }

  // rest * b_{n} * omega with b_n = sum_j s_j x^-_{n+j}, whose coefficients
  // kill the top vector.
  PbwOps::Vec b_prod(const Word& rest, long n) const {
    PbwOps::Vec v;
    for (long j = 0; j < static_cast<long>(bcoef_.size()); ++j)
      if (bcoef_[j] != 0)
        v.emplace(Word{Gen{GenKind::XMinus, n + j}}, bcoef_[j]);
    for (auto it = rest.rbegin(); it != rest.rend(); ++it)
      v = ops_.gen_apply(GenKind::XMinus, it->n, v);
    return v;
  }

  // Class of the PBW word w in the quotient, over words with letters < nred_.
  // The rewriting eliminates the maximal letter by the relation
  // rest * b_{m - nred} * omega = 0, whose leading word is w itself.
  const std::map<Word, Rat>& reduced_word(const Word& w) const {
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    std::map<Word, Rat> out;
    if (w.empty() || w.back().n < nred_) {
      out.emplace(w, Rat(1));
    } else {
      const long m = w.back().n;
      const Word rest(w.begin(), w.end() - 1);
      const PbwOps::Vec ev = b_prod(rest, m - nred_);
      if (ev.find(w) == ev.end() || ev.at(w) != 1)
        throw VerificationError("rewriting lost its leading term");
      for (const auto& [w2, c] : ev) {
        if (w2 == w) continue;
        for (const auto& [w3, c3] : reduced_word(w2)) {
          Rat add = -c * c3;
          auto [jt, fresh] = out.emplace(w3, add);
          if (!fresh) {
            jt->second += add;
            if (jt->second == 0) out.erase(jt);
          }
        }
      }
    }
    return memo_.emplace(w, std::move(out)).first->second;
  }

  PbwOps ops_;
  long depth_;
  long nred_;
  std::vector<Rat> bcoef_;
  std::vector<Word> words_;
  std::map<Word, long> index_;
  mutable std::mutex mu_;
  mutable std::map<Word, std::map<Word, Rat>> memo_;
};

}  // namespace

ModuleRealization make_weyl(const LinRat& r, const LinRat& s, long depth) {
  if (depth < 0) throw VerificationError("depth must be nonnegative");
  if (!r.is_polynomial() || !s.is_polynomial())
    throw VerificationError("Weyl modules need polynomial parameters");
  auto eng = std::make_shared<WeylEngine>(r, s, depth);
  const LinRat e = r / s;
  std::vector<BasisVec> basis;
  const Rat topw = lweight_weight(e);
  for (const Word& w : eng->words()) {
    BasisVec v;
    v.depth = static_cast<long>(w.size());
    v.weight = topw - Rat(2 * v.depth);
    v.label = word_label(w);
    v.word = w;
    basis.push_back(std::move(v));
  }
  return ModuleRealization({"Weyl", {}, {r, s}}, e.degree(), depth, e,
                           std::move(basis), std::move(eng));
}

// ---------------------------------------------------------------------------
// Simple quotients, built block by block through the x^+ pairing.

namespace {

class SimpleEngine final : public ActionEngine {
 public:
  SimpleEngine(const LinRat& e, long depth) : ops_(e), depth_(depth) {
    blocks_.resize(depth + 1);
    blocks_[0].lifts.push_back({{Word{}, Rat(1)}});
    blocks_[0].minv = QMat::identity(0);
    for (long k = 1; k <= depth; ++k) build_block(k);
    offsets_.resize(depth + 2);
    offsets_[0] = 0;
    for (long k = 0; k <= depth; ++k)
      offsets_[k + 1] = offsets_[k] + static_cast<long>(blocks_[k].lifts.size());
  }

  long block_dim(long k) const { return static_cast<long>(blocks_[k].lifts.size()); }
  long offset(long k) const { return offsets_[k]; }

  ActColumn act(GenKind k, long n, long col) const override {
    std::scoped_lock lk(mu_);
    long blk = 0;
    while (col >= offsets_[blk + 1]) ++blk;
    const auto& lift = blocks_[blk].lifts[col - offsets_[blk]];
    long target = blk;
    if (k == GenKind::XMinus) {
      if (n < 0) return {};
      target = blk + 1;
      if (target > depth_) return ActColumn::poison();
    } else if (k == GenKind::XPlus) {
      if (n < 0 || blk == 0) return {};
      target = blk - 1;
    }
    if (block_dim(target) == 0) return {};
    const QVec co = coords(target, ops_.gen_apply(k, n, lift));
    ActColumn r;
    for (long j = 0; j < static_cast<long>(co.size()); ++j)
      r.add(offsets_[target] + j, co[j]);
    return r;
  }

 private:
  using Vec = PbwOps::Vec;

  struct SBlock {
    std::vector<Vec> lifts;
    std::vector<std::pair<long, long>> rows;  // witness functionals (m, i_prev)
    QMat minv;                                // inverse of rows x lifts pairing
  };

  // Quotient coordinates of a Verma block-k vector in the accepted basis.
  QVec coords(long k, const Vec& x) const {
    const long d = static_cast<long>(blocks_[k].lifts.size());
    QVec out(d, Rat(0));
    for (const auto& [w, c] : x) {
      const QVec& cw = coords_word(k, w);
      for (long j = 0; j < d; ++j) out[j] += cw[j] * c;
    }
    return out;
  }

  const QVec& coords_word(long k, const Word& w) const {
    auto it = wcache_[k].find(w);
    if (it != wcache_[k].end()) return it->second;
    const SBlock& B = blocks_[k];
    const long d = static_cast<long>(B.lifts.size());
    QVec out;
    if (k == 0) {
      out.assign(1, w.empty() ? Rat(1) : Rat(0));
    } else if (d == 0) {
      out = {};
    } else {
      QVec phi(d, Rat(0));
      for (long r = 0; r < d; ++r) {
        const auto& [m, i] = B.rows[r];
        const QVec ci = coords(k - 1, ops_.gen_word(GenKind::XPlus, m, w));
        phi[r] = ci[i];
      }
      out = B.minv * phi;
    }
    return wcache_[k].emplace(w, std::move(out)).first->second;
  }

  Rat functional(long k, long m, long i, const Vec& x) const {
    return coords(k - 1, ops_.gen_apply(GenKind::XPlus, m, x))[i];
  }

  void build_block(long k) {
    SBlock& B = blocks_[k];
    const SBlock& prev = blocks_[k - 1];
    const long dprev = static_cast<long>(prev.lifts.size());
    if (dprev == 0) {
      B.minv = QMat::identity(0);
      return;
    }
    const long m_stop = 2 * k + ops_.lweight().num_degree() +
                        ops_.lweight().den_degree() + 6;
    long last_accept = -1;
    for (long n = 0; n <= 64; ++n) {
      for (long j = 0; j < dprev; ++j) {
        Vec cand = ops_.gen_apply(GenKind::XMinus, n, prev.lifts[j]);
        // Residual against the accepted lifts through the witness pairing.
        if (!B.lifts.empty()) {
          QVec phi(B.lifts.size(), Rat(0));
          for (std::size_t r = 0; r < B.rows.size(); ++r)
            phi[r] = functional(k, B.rows[r].first, B.rows[r].second, cand);
          const QVec combo = B.minv * phi;
          for (std::size_t t = 0; t < B.lifts.size(); ++t)
            PbwOps::axpy(cand, B.lifts[t], Rat(-combo[t]));
        }
        if (cand.empty()) continue;
        // Search a functional that certifies the residual nonzero in L(e).
        bool accepted = false;
        for (long m = 0; m <= m_stop && !accepted; ++m)
          for (long i = 0; i < dprev && !accepted; ++i)
            if (functional(k, m, i, cand) != 0) {
              B.lifts.push_back(cand);
              B.rows.emplace_back(m, i);
              rebuild_minv(k);
              wcache_[k].clear();
              accepted = true;
              last_accept = n;
            }
      }
      // Stall rule: three consecutive modes without a new direction.
      if (n >= 2 && n - last_accept >= 3) break;
    }
    if (B.lifts.empty()) B.minv = QMat::identity(0);
  }

  void rebuild_minv(long k) {
    SBlock& B = blocks_[k];
    const long d = static_cast<long>(B.lifts.size());
    QMat q(d, d);
    for (long r = 0; r < d; ++r)
      for (long t = 0; t < d; ++t)
        q.at(r, t) = functional(k, B.rows[r].first, B.rows[r].second, B.lifts[t]);
    B.minv = invert(q);
  }

  PbwOps ops_;
  long depth_;
  std::vector<SBlock> blocks_;
  std::vector<long> offsets_;
  mutable std::mutex mu_;
  mutable std::map<long, std::map<Word, QVec>> wcache_;
};

}  // namespace

ModuleRealization make_simple(const LinRat& e, long depth) {
  if (depth < 0) throw VerificationError("depth must be nonnegative");
  auto eng = std::make_shared<SimpleEngine>(e, depth);
  std::vector<BasisVec> basis;
  const Rat topw = lweight_weight(e);
  for (long k = 0; k <= depth; ++k)
    for (long j = 0; j < eng->block_dim(k); ++j) {
      BasisVec v;
      v.depth = k;
      v.weight = topw - Rat(2 * k);
      v.label = k == 0 ? "w" : "q" + std::to_string(k) + ":" + std::to_string(j);
      basis.push_back(std::move(v));
    }
  return ModuleRealization({"Simple", {}, {e}}, e.degree(), depth, e,
                           std::move(basis), std::move(eng));
}

// ---------------------------------------------------------------------------
// Radical quotient of an arbitrary realization, through its own matrices.

namespace {

class QuotientEngine final : public ActionEngine {
 public:
  explicit QuotientEngine(const ModuleRealization& parent) : parent_(parent) {
    const long depth = parent.depth();
    blocks_.resize(depth + 1);
    coords_.resize(depth + 1);
    if (parent.block(0).size() != 1)
      throw VerificationError("radical quotient expects a one-dimensional top block");
    blocks_[0].pivots = {parent.block(0)[0]};
    blocks_[0].minv = QMat::identity(1);
    coords_[0][parent.block(0)[0]] = {Rat(1)};
    for (long k = 1; k <= depth; ++k) build_block(k);
    offsets_.assign(depth + 2, 0);
    for (long k = 0; k <= depth; ++k)
      offsets_[k + 1] = offsets_[k] + static_cast<long>(blocks_[k].pivots.size());
  }

  long block_dim(long k) const { return static_cast<long>(blocks_[k].pivots.size()); }
  long parent_pivot(long k, long j) const { return blocks_[k].pivots[j]; }
  long offset(long k) const { return offsets_[k]; }

  ActColumn act(GenKind k, long n, long col) const override {
    long blk = 0;
    while (col >= offsets_[blk + 1]) ++blk;
    const long pcol = blocks_[blk].pivots[col - offsets_[blk]];
    long target = blk;
    if (k == GenKind::XMinus)
      target = blk + 1;
    else if (k == GenKind::XPlus)
      target = blk - 1;
    if (target < 0) return {};
    if (target > parent_.depth()) return ActColumn::poison();
    const ActColumn y = parent_.act(k, n, pcol);
    if (y.poisoned) return ActColumn::poison();
    if (block_dim(target) == 0) return {};
    QVec co(block_dim(target), Rat(0));
    for (const auto& [row, c] : y.v) {
      auto it = coords_[target].find(row);
      if (it == coords_[target].end())
        throw VerificationError("parent action left its weight block");
      for (std::size_t j = 0; j < it->second.size(); ++j) co[j] += it->second[j] * c;
    }
    ActColumn r;
    for (long j = 0; j < static_cast<long>(co.size()); ++j)
      r.add(offsets_[target] + j, co[j]);
    return r;
  }

 private:
  struct QBlock {
    std::vector<long> pivots;
    std::vector<std::pair<long, long>> rows;  // (x^+ mode, quotient index below)
    QMat minv;
  };

  // Parent x^+ column, memoized for the construction phase (single thread).
  const ActColumn& parent_xp(long m, long col) const {
    auto key = std::make_pair(m, col);
    auto it = xp_cache_.find(key);
    if (it != xp_cache_.end()) return it->second;
    return xp_cache_.emplace(key, parent_.act(GenKind::XPlus, m, col)).first->second;
  }

  // Functional (m, i) applied to a parent-basis column vector of block k.
  Rat functional(long k, long m, long i, const ActColumn& x) const {
    Rat out(0);
    for (const auto& [col, c] : x.v) {
      const ActColumn& y = parent_xp(m, col);
      if (y.poisoned) throw VerificationError("poisoned x^+ column in the radical quotient");
      for (const auto& [row, v] : y.v) {
        auto it = coords_[k - 1].find(row);
        if (it == coords_[k - 1].end())
          throw VerificationError("parent action left its weight block");
        out += it->second[i] * v * c;
      }
    }
    return out;
  }

  void build_block(long k) {
    QBlock& B = blocks_[k];
    const auto& cols = parent_.block(k);
    const long dprev = block_dim(k - 1);
    if (cols.empty() || dprev == 0) {
      B.minv = QMat::identity(0);
      for (long col : cols) coords_[k][col] = {};
      return;
    }
    // Grow the functional window until the rank is twice stable.
    long rank = -1, stable = 0, M = 2;
    std::vector<long> pivot_cols, pivot_rows;
    QMat A;
    while (stable < 2) {
      std::vector<std::pair<long, long>> rows;
      for (long m = 0; m <= M; ++m)
        for (long i = 0; i < dprev; ++i) rows.emplace_back(m, i);
      A = QMat(static_cast<long>(rows.size()), static_cast<long>(cols.size()));
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) {
          ActColumn unit;
          unit.add(cols[c], Rat(1));
          A.at(r, c) = functional(k, rows[r].first, rows[r].second, unit);
        }
      QMat rr = A;
      pivot_cols = rr.rref();
      const long nr = static_cast<long>(pivot_cols.size());
      if (nr == rank) ++stable;
      else stable = 0;
      rank = nr;
      if (stable >= 2 || rank == static_cast<long>(cols.size())) {
        // Pivot rows: rref of the transpose restricted to the pivot columns.
        QMat tr(static_cast<long>(pivot_cols.size()), A.rows());
        for (long r = 0; r < A.rows(); ++r)
          for (std::size_t c = 0; c < pivot_cols.size(); ++c)
            tr.at(static_cast<long>(c), r) = A.at(r, pivot_cols[c]);
        pivot_rows = tr.rref();
        B.rows.clear();
        for (long r : pivot_rows) B.rows.push_back(rows[r]);
        break;
      }
      ++M;
    }
    for (long c : pivot_cols) B.pivots.push_back(cols[c]);
    const long d = static_cast<long>(B.pivots.size());
    QMat q(d, d);
    for (long r = 0; r < d; ++r)
      for (long t = 0; t < d; ++t) q.at(r, t) = A.at(pivot_rows[r], pivot_cols[t]);
    B.minv = invert(q);
    // Coordinates of every parent column of this block.
    for (long col : cols) {
      ActColumn unit;
      unit.add(col, Rat(1));
      QVec phi(d, Rat(0));
      for (long r = 0; r < d; ++r)
        phi[r] = functional(k, B.rows[r].first, B.rows[r].second, unit);
      coords_[k][col] = B.minv * phi;
    }
  }

  ModuleRealization parent_;
  std::vector<QBlock> blocks_;
  std::vector<std::map<long, QVec>> coords_;
  std::vector<long> offsets_;
  mutable std::map<std::pair<long, long>, ActColumn> xp_cache_;
};

}  // namespace

ModuleRealization radical_quotient(const ModuleRealization& v) {
  auto eng = std::make_shared<QuotientEngine>(v);
  std::vector<BasisVec> basis;
  for (long k = 0; k <= v.depth(); ++k)
    for (long j = 0; j < eng->block_dim(k); ++j) {
      const BasisVec& pv = v.vec(eng->parent_pivot(k, j));
      BasisVec b;
      b.depth = k;
      b.weight = pv.weight;
      b.label = "r" + std::to_string(k) + ":" + std::to_string(j);
      b.word = pv.word;
      b.scale = pv.scale;
      basis.push_back(std::move(b));
    }
  return ModuleRealization({"RadicalQuotient", {}, {v.top()}}, v.shift(),
                           v.depth(), v.top(), std::move(basis), std::move(eng));
}

// ---------------------------------------------------------------------------
// l-weight decomposition by joint generalized xi eigenspaces.

QCharacter lweight_decomposition(const ModuleRealization& v, long xi_modes) {
  if (xi_modes < 1) throw VerificationError("xi_modes must be positive");
  const CartanData cd = cartan("A1");
  const long F = v.xi_floor();
  const long P = F + xi_modes;
  const LWeight top = LWeight::from_components({v.top()});
  QCharacter qc(top, v.depth());
  for (long k = 0; k <= v.depth(); ++k) {
    const auto& cols = v.block(k);
    const long m = static_cast<long>(cols.size());
    if (m == 0) continue;
    std::map<long, long> pos;
    for (long t = 0; t < m; ++t) pos[cols[t]] = t;
    std::vector<QMat> X;
    for (long p = F; p <= P; ++p) {
      QMat xp(m, m);
      for (long t = 0; t < m; ++t) {
        const ActColumn c = v.act(GenKind::Xi, p, cols[t]);
        if (c.poisoned)
          throw VerificationError(
              "poisoned xi column in the decomposition; raise the window or "
              "lower xi_modes");
        for (const auto& [row, val] : c.v) {
          auto it = pos.find(row);
          if (it == pos.end())
            throw VerificationError("xi is not block-diagonal: corrupted realization");
          xp.at(it->second, t) = val;
        }
      }
      X.push_back(std::move(xp));
    }
    for (std::size_t i = 0; i < X.size(); ++i)
      for (std::size_t j = i + 1; j < X.size(); ++j)
        if (!(X[i] * X[j] == X[j] * X[i]))
          throw VerificationError("xi modes do not commute: corrupted realization");

    struct Space {
      QMat basis;
      std::map<long, Rat> lambda;
    };
    std::vector<Space> spaces{{QMat::identity(m), {}}};
    for (long p = F; p <= P; ++p) {
      const QMat& Xp = X[p - F];
      std::vector<Space> next;
      for (const Space& sp : spaces) {
        const long r = sp.basis.cols();
        QMat R(r, r);
        for (long j = 0; j < r; ++j) {
          QVec bj(m);
          for (long i = 0; i < m; ++i) bj[i] = sp.basis.at(i, j);
          const QVec xb = Xp * bj;
          const auto sol = sp.basis.solve(xb);
          if (!sol)
            throw VerificationError("xi does not preserve a refinement subspace");
          for (long i = 0; i < r; ++i) R.at(i, j) = (*sol)[i];
        }
        const auto [roots, cof] = R.charpoly().rational_roots();
        if (cof.degree() > 0)
          throw VerificationError("irrational xi spectrum in the decomposition");
        long covered = 0;
        for (const auto& [lam, mult] : roots) {
          QMat shifted = R - QMat::identity(r) * lam;
          const auto ker = shifted.pow(r).kernel();
          if (static_cast<long>(ker.size()) != mult)
            throw VerificationError("generalized eigenspace dimension mismatch");
          QMat nb(m, static_cast<long>(ker.size()));
          for (std::size_t j2 = 0; j2 < ker.size(); ++j2) {
            const QVec col = sp.basis * ker[j2];
            for (long i = 0; i < m; ++i) nb.at(i, static_cast<long>(j2)) = col[i];
          }
          Space ns{std::move(nb), sp.lambda};
          ns.lambda[p] = lam;
          next.push_back(std::move(ns));
          covered += mult;
        }
        if (covered != r)
          throw VerificationError("xi spectrum does not fill the block");
      }
      spaces = std::move(next);
    }

    for (const Space& sp : spaces) {
      auto mode_at = [&](long q) -> Rat {
        if (q < F - 1) return Rat(0);
        if (q == F - 1) return Rat(1);
        return sp.lambda.at(q);
      };
      std::optional<LinRat> found;
      for (long D = 0; !found; ++D) {
        const long neq = P - D + 1;
        if (neq < D || D > P - F + 1) break;
        QMat A(neq, D);
        QVec b(neq);
        bool solvable = true;
        QVec qco(D, Rat(0));
        if (D > 0) {
          for (long t = 0; t < neq; ++t) {
            for (long j = 0; j < D; ++j) A.at(t, j) = mode_at(t + j);
            b[t] = -mode_at(t + D);
          }
          const auto sol = A.solve(b);
          if (!sol) solvable = false;
          else qco = *sol;
        } else {
          for (long t = 0; t < neq; ++t)
            if (mode_at(t) != 0) solvable = false;
        }
        if (!solvable) continue;
        std::vector<Rat> qc_coeffs(qco.begin(), qco.end());
        qc_coeffs.push_back(Rat(1));
        const Poly q = Poly::from_coeffs(qc_coeffs);
        const auto [qroots, qcof] = q.rational_roots();
        if (qcof.degree() > 0) continue;
        const long pdeg = D - F;
        if (pdeg < 0) continue;
        std::vector<Rat> pcoeffs(pdeg + 1, Rat(0));
        for (long t = 0; t <= pdeg; ++t)
          for (long j = 0; j <= D; ++j)
            pcoeffs[t] += q.coeff(j) * mode_at(j - t - 1);
        const Poly pnum = Poly::from_coeffs(pcoeffs);
        if (!pnum.is_monic()) continue;
        const auto [proots, pcof] = pnum.rational_roots();
        if (pcof.degree() > 0) continue;
        LinRat f;
        try {
          f = LinRat::from_polys(pnum, q);
        } catch (const VerificationError&) {
          continue;
        }
        const LaurentSeries s = expand_at_infinity(f, P + 2);
        bool ok = true;
        for (long q2 = F - 1; q2 <= P && ok; ++q2)
          ok = s.coeff(-q2 - 1) == mode_at(q2);
        if (ok) found = f;
      }
      if (!found)
        throw VerificationError("l-weight reconstruction failed; raise xi_modes");
      if (lweight_weight(*found) != v.block_weight(k))
        throw VerificationError("l-weight disagrees with the block grading");
      const auto am =
          a_monomial_decompose(cd, LWeight::from_components({*found}) / top);
      if (!am)
        throw VerificationError("l-weight is not an A-monomial times the top");
      AInvMonomial inv;
      long size = 0;
      for (const auto& [key, exp] : *am) {
        if (exp > 0)
          throw VerificationError("l-weight lies above the top in the A-order");
        if (exp < 0) {
          inv[key] = static_cast<int>(-exp);
          size += -exp;
        }
      }
      if (size != k)
        throw VerificationError("A-monomial size disagrees with the depth block");
      const long mult = sp.basis.cols();
      if (k == 0) {
        if (!inv.empty() || mult != 1 || *found != v.top())
          throw VerificationError("top block is not the highest l-weight line");
      } else {
        qc.add_term(inv, mult);
      }
    }
  }
  return qc;
}

// ---------------------------------------------------------------------------
// Defining relations as exact matrix identities.

namespace {

struct RelTerm {
  Rat c;
  std::vector<const SparseMat*> ms;  // composition, rightmost applied first
};

struct RelInstance {
  std::string family;
  std::string label;
  std::vector<RelTerm> terms;
};

}  // namespace

RelationReport verify_relations(const ModuleRealization& v, long n_max,
                                bool parallel) {
  if (n_max < 0) throw VerificationError("n_max must be nonnegative");
  const long F = v.xi_floor();
  const long dim = v.dim();
  const long xm_hi = n_max + 1;
  const long xi_lo = F - 2;
  const long xi_hi = std::max({F + n_max, 2 * n_max, xi_lo});

  std::vector<SparseMat> XM(xm_hi + 1), XP(xm_hi + 1), XI(xi_hi - xi_lo + 1);
  SparseMat ZERO;
  ZERO.rows = dim;
  ZERO.cols.resize(dim);

  struct Job {
    GenKind k;
    long n;
    SparseMat* m;
  };
  std::vector<Job> jobs;
  for (long n = 0; n <= xm_hi; ++n) {
    jobs.push_back({GenKind::XMinus, n, &XM[n]});
    jobs.push_back({GenKind::XPlus, n, &XP[n]});
  }
  for (long p = xi_lo; p <= xi_hi; ++p)
    jobs.push_back({GenKind::Xi, p, &XI[p - xi_lo]});
  for (Job& j : jobs) {
    j.m->rows = dim;
    j.m->cols.resize(dim);
  }
  const long njobs = static_cast<long>(jobs.size());
#pragma omp parallel for collapse(2) schedule(dynamic) if (parallel)
  for (long j = 0; j < njobs; ++j)
    for (long c = 0; c < dim; ++c)
      jobs[j].m->cols[c] = v.act(jobs[j].k, jobs[j].n, c);

  auto xi_at = [&](long p) -> const SparseMat* {
    return p < xi_lo ? &ZERO : &XI[p - xi_lo];
  };
  auto tag = [](std::initializer_list<std::pair<const char*, long>> xs) {
    std::string s;
    for (const auto& [name, val] : xs)
      s += std::string(" ") + name + "=" + std::to_string(val);
    return s;
  };

  std::vector<RelInstance> ins;
  ins.push_back({"shift", "shift unit", {{Rat(1), {xi_at(F - 1)}}, {Rat(-1), {}}}});
  ins.push_back({"shift", "shift below floor", {{Rat(1), {xi_at(F - 2)}}}});
  for (long p = F; p <= F + n_max; ++p)
    for (long q = p + 1; q <= F + n_max; ++q)
      ins.push_back({"xi-xi",
                     "xi-xi" + tag({{"p", p}, {"q", q}}),
                     {{Rat(1), {xi_at(p), xi_at(q)}}, {Rat(-1), {xi_at(q), xi_at(p)}}}});
  for (long m = 0; m <= n_max; ++m)
    for (long n = 0; n <= n_max; ++n)
      ins.push_back({"cartan",
                     "cartan" + tag({{"m", m}, {"n", n}}),
                     {{Rat(1), {&XP[m], &XM[n]}},
                      {Rat(-1), {&XM[n], &XP[m]}},
                      {Rat(-1), {xi_at(m + n)}}}});
  for (long p = F - 1; p <= F + n_max - 1; ++p)
    for (long n = 0; n <= n_max; ++n) {
      ins.push_back({"cartan-drinfeld-minus",
                     "cartan-drinfeld-minus" + tag({{"p", p}, {"n", n}}),
                     {{Rat(1), {xi_at(p + 1), &XM[n]}},
                      {Rat(-1), {&XM[n], xi_at(p + 1)}},
                      {Rat(-1), {xi_at(p), &XM[n + 1]}},
                      {Rat(1), {&XM[n + 1], xi_at(p)}},
                      {Rat(1), {xi_at(p), &XM[n]}},
                      {Rat(1), {&XM[n], xi_at(p)}}}});
      ins.push_back({"cartan-drinfeld-plus",
                     "cartan-drinfeld-plus" + tag({{"p", p}, {"n", n}}),
                     {{Rat(1), {xi_at(p + 1), &XP[n]}},
                      {Rat(-1), {&XP[n], xi_at(p + 1)}},
                      {Rat(-1), {xi_at(p), &XP[n + 1]}},
                      {Rat(1), {&XP[n + 1], xi_at(p)}},
                      {Rat(-1), {xi_at(p), &XP[n]}},
                      {Rat(-1), {&XP[n], xi_at(p)}}}});
    }
  for (long m = 0; m <= n_max; ++m)
    for (long n = m; n <= n_max; ++n) {
      ins.push_back({"drinfeld-minus",
                     "drinfeld-minus" + tag({{"m", m}, {"n", n}}),
                     {{Rat(1), {&XM[m + 1], &XM[n]}},
                      {Rat(-1), {&XM[n], &XM[m + 1]}},
                      {Rat(-1), {&XM[m], &XM[n + 1]}},
                      {Rat(1), {&XM[n + 1], &XM[m]}},
                      {Rat(1), {&XM[m], &XM[n]}},
                      {Rat(1), {&XM[n], &XM[m]}}}});
      ins.push_back({"drinfeld-plus",
                     "drinfeld-plus" + tag({{"m", m}, {"n", n}}),
                     {{Rat(1), {&XP[m + 1], &XP[n]}},
                      {Rat(-1), {&XP[n], &XP[m + 1]}},
                      {Rat(-1), {&XP[m], &XP[n + 1]}},
                      {Rat(1), {&XP[n + 1], &XP[m]}},
                      {Rat(-1), {&XP[m], &XP[n]}},
                      {Rat(-1), {&XP[n], &XP[m]}}}});
    }

  const long ni = static_cast<long>(ins.size());
  const long ntasks = ni * dim;
  std::vector<signed char> outcome(ntasks, 0);
  std::vector<std::pair<long, RelationViolation>> found;
  std::mutex found_mu;
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
  for (long t = 0; t < ntasks; ++t) {
    const RelInstance& I = ins[t / dim];
    const long c = t % dim;
    ActColumn res;
    bool skip = false;
    for (const RelTerm& tm : I.terms) {
      ActColumn y;
      y.add(c, Rat(1));
      for (auto it = tm.ms.rbegin(); it != tm.ms.rend() && !y.poisoned; ++it)
        y = (*it)->apply(y);
      if (y.poisoned) {
        skip = true;
        break;
      }
      res.add_scaled(y, tm.c);
    }
    if (skip) continue;
    if (res.v.empty()) {
      outcome[t] = 1;
    } else {
      outcome[t] = 2;
      const auto& [row, val] = *res.v.begin();
      RelationViolation viol{I.label, c,
                             "residual at row " + std::to_string(row) + ": " +
                                 val.get_str()};
      std::scoped_lock lk(found_mu);
      found.emplace_back(t, std::move(viol));
    }
  }

  RelationReport rep;
  rep.n_max = n_max;
  rep.parallel = parallel;
  rep.index_cap = v.index_cap();
  for (long t = 0; t < ntasks; ++t) {
    RelationStat& st = rep.families[ins[t / dim].family];
    if (outcome[t] == 0) {
      ++st.skipped;
      ++rep.skipped;
    } else {
      ++st.checked;
      ++rep.checked;
    }
  }
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [t, viol] : found) rep.violations.push_back(std::move(viol));
  return rep;
}

// ---------------------------------------------------------------------------
// Spectral shift.

namespace {

QRat qrat_shift(const QRat& f, const Rat& a) {
  std::map<Rat, int> den;
  for (const auto& [r, e] : f.den_roots()) den.emplace(Rat(r + a), e);
  return QRat::from(f.num().taylor_shift(Rat(-a)), std::move(den));
}

}  // namespace

ModuleRealization spectral_shift(const ModuleRealization& v, const Rat& a) {
  if (v.series() != nullptr) {
    SeriesTables t;
    for (int k = 0; k < 3; ++k)
      for (const auto& [key, f] : v.series()->entry[k])
        t.set(static_cast<GenKind>(k), key.first, key.second, qrat_shift(f, a));
    std::set<std::pair<GenKind, long>> poisons;
    for (long c = 0; c < v.dim(); ++c)
      for (GenKind k : {GenKind::XMinus, GenKind::Xi, GenKind::XPlus})
        if (v.act(k, k == GenKind::Xi ? v.xi_floor() : 0, c).poisoned)
          poisons.insert({k, c});
    std::vector<BasisVec> basis = v.basis();
    for (BasisVec& b : basis) b.weight -= a * Rat(v.shift());
    FamilySpec fam = v.family();
    for (Rat& p : fam.params) p += a;
    for (LinRat& f : fam.lparams) f = f.shifted(a);
    auto eng = std::make_shared<ExplicitEngine>(std::move(t), std::move(poisons),
                                                v.dim());
    return ModuleRealization(std::move(fam), v.shift(), v.depth(),
                             v.top().shifted(a), std::move(basis), std::move(eng),
                             v.index_cap());
  }
  const std::string& name = v.family().name;
  if (name == "Verma")
    return make_verma(v.top().shifted(a), v.depth(),
                      v.index_cap() ? *v.index_cap() : -1);
  if (name == "Simple") return make_simple(v.top().shifted(a), v.depth());
  if (name == "Weyl")
    return make_weyl(v.family().lparams.at(0).shifted(a),
                     v.family().lparams.at(1).shifted(a), v.depth());
  throw VerificationError("spectral shift is not available for family " + name);
}

}  // namespace yang
