#include "yang/tensor.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "yang/qmat.hpp"

namespace yang {
namespace {

// Mode n of a rational entry f = sum_n f_n u^{-n-1}; negative n reads the
// polynomial part.
Rat entry_mode(const QRat& f, long n) {
  if (f.is_zero()) return Rat(0);
  return f.at_infinity(std::max(n + 2, 2L)).coeff(-n - 1);
}

// Weight functional of a monic l-weight: sum of poles minus sum of zeros.
Rat twist_weight(const LinRat& f) {
  Rat w(0);
  for (const auto& [a, e] : f.roots()) w -= a * Rat(e);
  return w;
}

Rat binom(long n, long k) {
  if (k < 0 || k > n) return Rat(0);
  Rat r(1);
  for (long i = 0; i < k; ++i) r = Rat(r * Rat(n - i) / Rat(i + 1));
  return r;
}

// Ascending coefficients of a polynomial l-weight.
std::vector<Rat> poly_coeffs(const LinRat& s) {
  if (!s.is_polynomial())
    throw VerificationError("one-dimensional twist needs a polynomial l-weight");
  const Poly p = s.num_poly();
  std::vector<Rat> c;
  for (long j = 0; j <= p.degree(); ++j) c.push_back(p.coeff(j));
  return c;
}

// Rational action tables evaluated mode by mode, with per-column poisons.
class TableEngine final : public ActionEngine {
 public:
  TableEngine(SeriesTables t, std::set<std::pair<GenKind, long>> poisons,
              long dim)
      : tables_(std::move(t)), poisons_(std::move(poisons)) {
    for (int k = 0; k < 3; ++k) {
      cols_[k].assign(static_cast<std::size_t>(dim), {});
      for (const auto& [key, f] : tables_.entry[k]) {
        const auto& [row, col] = key;
        if (row < 0 || row >= dim || col < 0 || col >= dim)
          throw VerificationError("series table entry out of range");
        cols_[k][static_cast<std::size_t>(col)].emplace_back(row, f);
      }
    }
  }

  ActColumn act(GenKind k, long n, long col) const override {
    if (poisons_.count({k, col})) return ActColumn::poison();
    ActColumn r;
    for (const auto& [row, f] : cols_[static_cast<int>(k)][static_cast<std::size_t>(col)])
      r.add(row, entry_mode(f, n));
    return r;
  }

  const SeriesTables* series() const override { return &tables_; }

 private:
  SeriesTables tables_;
  std::set<std::pair<GenKind, long>> poisons_;
  std::vector<std::vector<std::pair<long, QRat>>> cols_[3];
};

// Pullback of an action through a one-dimensional twist when no closed-form
// tables exist: the twisted series are mode combinations of the inner ones.
class TwistEngine final : public ActionEngine {
 public:
  TwistEngine(std::shared_ptr<const ActionEngine> inner, std::vector<Rat> c,
              GenKind twisted)
      : inner_(std::move(inner)), c_(std::move(c)), twisted_(twisted) {}

  ActColumn act(GenKind k, long n, long col) const override {
    if (k != GenKind::Xi && k != twisted_) return inner_->act(k, n, col);
    if (k == twisted_ && n < 0) return {};  // the principal part starts at 0
    ActColumn r;
    for (std::size_t j = 0; j < c_.size(); ++j)
      if (c_[j] != 0) r.add_scaled(inner_->act(k, n + static_cast<long>(j), col), c_[j]);
    return r;
  }

 private:
  std::shared_ptr<const ActionEngine> inner_;
  std::vector<Rat> c_;
  GenKind twisted_;
};

// Shared commutator-recursion core of the shift-zero coproduct, generic over
// the coefficient ring of the columns (exact rationals, or polynomials in the
// formal spectral parameter z).
template <class Col>
struct Y0Core {
  using S = typename std::remove_cvref_t<decltype(std::declval<Col&>().v)>::mapped_type;

  long dv = 0, dw = 0, dim = 0, cap = 0;
  std::vector<Col> tmat;  // T = xi_1 - xi_0^2 / 2
  mutable std::map<long, std::vector<Col>> xm, xp, xi;
  mutable std::mutex mu;

  static S unit() { return S(Rat(1)); }

  std::vector<Col> kron_left(const std::vector<Col>& a) const {
    std::vector<Col> m(static_cast<std::size_t>(dim));
    for (long i = 0; i < dv; ++i) {
      const Col& ai = a[static_cast<std::size_t>(i)];
      for (long j = 0; j < dw; ++j) {
        Col& c = m[static_cast<std::size_t>(i * dw + j)];
        if (ai.poisoned) {
          c = Col::poison();
          continue;
        }
        for (const auto& [r, x] : ai.v) c.add(r * dw + j, x);
      }
    }
    return m;
  }

  std::vector<Col> kron_right(const std::vector<Col>& b) const {
    std::vector<Col> m(static_cast<std::size_t>(dim));
    for (long i = 0; i < dv; ++i)
      for (long j = 0; j < dw; ++j) {
        Col& c = m[static_cast<std::size_t>(i * dw + j)];
        const Col& bj = b[static_cast<std::size_t>(j)];
        if (bj.poisoned) {
          c = Col::poison();
          continue;
        }
        for (const auto& [r, x] : bj.v) c.add(i * dw + r, x);
      }
    return m;
  }

  std::vector<Col> kron2(const std::vector<Col>& a, const std::vector<Col>& b) const {
    std::vector<Col> m(static_cast<std::size_t>(dim));
    for (long i = 0; i < dv; ++i)
      for (long j = 0; j < dw; ++j) {
        Col& c = m[static_cast<std::size_t>(i * dw + j)];
        const Col& ai = a[static_cast<std::size_t>(i)];
        const Col& bj = b[static_cast<std::size_t>(j)];
        if (ai.poisoned || bj.poisoned) {
          c = Col::poison();
          continue;
        }
        for (const auto& [ra, xa] : ai.v)
          for (const auto& [rb, xb] : bj.v) c.add(ra * dw + rb, S(xa * xb));
      }
    return m;
  }

  static void addm(std::vector<Col>& a, const std::vector<Col>& b, const S& s) {
    for (std::size_t j = 0; j < a.size(); ++j) a[j].add_scaled(b[j], s);
  }

  static void scalem(std::vector<Col>& a, const S& s) {
    for (Col& c : a)
      for (auto& [r, x] : c.v) x = S(x * s);
  }

  Col apply(const std::vector<Col>& m, const Col& x) const {
    if (x.poisoned) return Col::poison();
    Col r;
    for (const auto& [j, c] : x.v) r.add_scaled(m[static_cast<std::size_t>(j)], c);
    return r;
  }

  std::vector<Col> mul(const std::vector<Col>& a, const std::vector<Col>& b) const {
    std::vector<Col> m(static_cast<std::size_t>(dim));
    for (long j = 0; j < dim; ++j)
      m[static_cast<std::size_t>(j)] = apply(a, b[static_cast<std::size_t>(j)]);
    return m;
  }

  std::vector<Col> comm(const std::vector<Col>& a, const std::vector<Col>& b) const {
    std::vector<Col> m = mul(a, b);
    addm(m, mul(b, a), S(Rat(-1)));
    return m;
  }

  // vb and wb hold the factor columns of x^-_0, x^+_0, xi_0, xi_1.
  void init(long dv_in, long dw_in, long cap_in, std::array<std::vector<Col>, 4> vb,
            std::array<std::vector<Col>, 4> wb) {
    dv = dv_in;
    dw = dw_in;
    dim = dv * dw;
    cap = cap_in;
    std::vector<Col> xm0 = kron_left(vb[0]);
    addm(xm0, kron_right(wb[0]), unit());
    std::vector<Col> xp0 = kron_left(vb[1]);
    addm(xp0, kron_right(wb[1]), unit());
    std::vector<Col> xi0 = kron_left(vb[2]);
    addm(xi0, kron_right(wb[2]), unit());
    // Delta(xi_1) = xi_1 (x) 1 + 1 (x) xi_1 + xi_0 (x) xi_0 - 2 x^-_0 (x) x^+_0.
    std::vector<Col> xi1 = kron_left(vb[3]);
    addm(xi1, kron_right(wb[3]), unit());
    addm(xi1, kron2(vb[2], wb[2]), unit());
    addm(xi1, kron2(vb[0], wb[1]), S(Rat(-2)));
    tmat = xi1;
    const Rat mhalf = Rat(-1) / Rat(2);
    std::vector<Col> sq = mul(xi0, xi0);
    addm(tmat, sq, S(mhalf));
    xm.emplace(0, std::move(xm0));
    xp.emplace(0, std::move(xp0));
    xi.emplace(0, std::move(xi0));
    xi.emplace(1, std::move(xi1));
  }

  // Caller holds mu. x^(-/+)_{n+1} = (-/+) [T, x_n] / 2; xi_p = [x^+_p, x^-_0].
  const std::vector<Col>& mat(GenKind k, long n) const {
    std::map<long, std::vector<Col>>& cache =
        k == GenKind::Xi ? xi : (k == GenKind::XPlus ? xp : xm);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (k == GenKind::Xi) {
      const std::vector<Col>& p = mat(GenKind::XPlus, n);
      return cache.emplace(n, comm(p, xm.at(0))).first->second;
    }
    const Rat half = Rat(1) / Rat(2);
    const Rat mhalf = Rat(-1) / Rat(2);
    long have = cache.rbegin()->first;
    while (have < n) {
      std::vector<Col> next = comm(tmat, cache.at(have));
      scalem(next, k == GenKind::XPlus ? S(half) : S(mhalf));
      cache.emplace(have + 1, std::move(next));
      ++have;
    }
    return cache.at(n);
  }

  Col act(GenKind k, long n, long col) const {
    if (col < 0 || col >= dim) throw VerificationError("column out of range");
    if (k == GenKind::Xi) {
      if (n == -1) {
        Col c;
        c.add(col, unit());
        return c;
      }
      if (n < -1) return {};
    } else if (n < 0) {
      return {};
    }
    if (n > cap) return Col::poison();
    std::lock_guard<std::mutex> g(mu);
    return mat(k, n)[static_cast<std::size_t>(col)];
  }
};

class Y0Engine final : public ActionEngine {
 public:
  Y0Engine(const ModuleRealization& v, const ModuleRealization& w, long cap) {
    auto base = [](const ModuleRealization& m) {
      return std::array<std::vector<ActColumn>, 4>{
          m.mode_matrix(GenKind::XMinus, 0).cols,
          m.mode_matrix(GenKind::XPlus, 0).cols,
          m.mode_matrix(GenKind::Xi, 0).cols, m.mode_matrix(GenKind::Xi, 1).cols};
    };
    core_.init(v.dim(), w.dim(), cap, base(v), base(w));
  }

  ActColumn act(GenKind k, long n, long col) const override {
    return core_.act(k, n, col);
  }

 private:
  Y0Core<ActColumn> core_;
};

ZColumn lift(const ActColumn& c) {
  ZColumn z;
  z.poisoned = c.poisoned;
  for (const auto& [r, x] : c.v) z.v.emplace(r, Poly(x));
  return z;
}

Poly zmon(const Rat& c, long e) {  // c z^e
  std::vector<Rat> v(static_cast<std::size_t>(e) + 1, Rat(0));
  v.back() = c;
  return Poly::from_coeffs(std::move(v));
}

// Mode n of the factor series after u -> u - z. Nonnegative modes mix only
// nonnegative source modes, binomially; negative modes mix only the
// polynomial part of xi.
ZColumn factor_act(const ModuleRealization& m, bool shifted, GenKind k, long n,
                   long col) {
  if (!shifted) return lift(m.act(k, n, col));
  ZColumn out;
  if (n >= 0) {
    for (long t = 0; t <= n; ++t) {
      const ActColumn c = m.act(k, t, col);
      if (c.poisoned) return ZColumn::poison();
      if (c.v.empty()) continue;
      const Poly coeff = zmon(binom(n, t), n - t);
      for (const auto& [r, x] : c.v) out.add(r, coeff * x);
    }
    return out;
  }
  if (k != GenKind::Xi) return out;
  for (long t = m.xi_floor() - 1; t <= n; ++t) {
    const ActColumn c = m.act(GenKind::Xi, t, col);
    if (c.poisoned) return ZColumn::poison();
    if (c.v.empty()) continue;
    const long e = n - t;
    Rat b = binom(-t - 1, e);
    if (e % 2 != 0) b = -b;
    const Poly coeff = zmon(b, e);
    for (const auto& [r, x] : c.v) out.add(r, coeff * x);
  }
  return out;
}

// Coefficient polynomials of s(u - z) in u, ascending; entry j is a
// polynomial in z.
std::vector<Poly> shifted_coeffs(const std::vector<Rat>& c) {
  std::vector<Poly> out(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    std::vector<Rat> p;
    for (std::size_t k = j; k < c.size(); ++k) {
      Rat v = Rat(c[k] * binom(static_cast<long>(k), static_cast<long>(j)));
      if ((k - j) % 2 != 0) v = -v;
      p.push_back(v);
    }
    out[j] = Poly::from_coeffs(std::move(p));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// One-dimensional twists.

ModuleRealization tensor_onedim(const LinRat& s, const ModuleRealization& v,
                                TensorSide side) {
  const std::vector<Rat> c = poly_coeffs(s);
  const GenKind twisted = side == TensorSide::Left ? GenKind::XPlus : GenKind::XMinus;
  const Rat ws = twist_weight(s);

  std::vector<BasisVec> basis = v.basis();
  for (BasisVec& b : basis) {
    b.weight += ws;
    b.word.reset();  // PBW words describe the untwisted action only
  }

  std::shared_ptr<const ActionEngine> eng;
  if (v.series() != nullptr) {
    SeriesTables t;
    const QRat sq{s};
    for (int k = 0; k < 3; ++k) {
      const GenKind kind = static_cast<GenKind>(k);
      for (const auto& [key, f] : v.series()->entry[k]) {
        QRat g = f;
        if (kind == GenKind::Xi)
          g = g * sq;
        else if (kind == twisted)
          g = (g * sq).proper_part();
        if (!g.is_zero()) t.set(kind, key.first, key.second, g);
      }
    }
    std::set<std::pair<GenKind, long>> poisons;
    for (long col = 0; col < v.dim(); ++col)
      for (GenKind k : {GenKind::XMinus, GenKind::Xi, GenKind::XPlus})
        if (v.act(k, k == GenKind::Xi ? v.xi_floor() : 0, col).poisoned)
          poisons.insert({k, col});
    eng = std::make_shared<TableEngine>(std::move(t), std::move(poisons), v.dim());
  } else {
    eng = std::make_shared<TwistEngine>(v.engine(), c, twisted);
  }

  FamilySpec fam{"TensorOneDim", {}, {s, v.top()}};
  return ModuleRealization(std::move(fam), v.shift() + s.num_degree(), v.depth(),
                           s * v.top(), std::move(basis), std::move(eng),
                           v.index_cap());
}

// ---------------------------------------------------------------------------
// Shift-zero coproduct.

ModuleRealization tensor_Y0(const ModuleRealization& v, const ModuleRealization& w,
                            long index_cap) {
  if (v.shift() != 0 || w.shift() != 0)
    throw VerificationError("coproduct tensor factors must both have shift 0");
  if (v.dim() == 0 || w.dim() == 0)
    throw VerificationError("tensor factor has no basis");
  const long depth = v.depth() + w.depth();
  const long cap = index_cap >= 0 ? index_cap : 2 * depth + 8;

  std::vector<BasisVec> basis;
  basis.reserve(static_cast<std::size_t>(v.dim() * w.dim()));
  for (long i = 0; i < v.dim(); ++i)
    for (long j = 0; j < w.dim(); ++j) {
      BasisVec b;
      b.depth = v.vec(i).depth + w.vec(j).depth;
      b.weight = v.vec(i).weight + w.vec(j).weight;
      b.label = v.vec(i).label + "(x)" + w.vec(j).label;
      basis.push_back(std::move(b));
    }

  auto eng = std::make_shared<Y0Engine>(v, w, cap);
  FamilySpec fam{"TensorY0", {}, {v.top(), w.top()}};
  return ModuleRealization(std::move(fam), 0, depth, v.top() * w.top(),
                           std::move(basis), std::move(eng), cap);
}

TensorRealization make_tensor(const ModuleRealization& v, const ModuleRealization& w,
                              TensorMode mode, long index_cap) {
  TensorRealization t{v, w, mode, {}};
  switch (mode) {
    case TensorMode::OneDimLeft:
      if (v.dim() != 1 || !v.top().is_polynomial())
        throw VerificationError(
            "left factor is not a polynomial one-dimensional module");
      t.composite = tensor_onedim(v.top(), w, TensorSide::Left);
      break;
    case TensorMode::OneDimRight:
      if (w.dim() != 1 || !w.top().is_polynomial())
        throw VerificationError(
            "right factor is not a polynomial one-dimensional module");
      t.composite = tensor_onedim(w.top(), v, TensorSide::Right);
      break;
    case TensorMode::HopfY0:
      t.composite = tensor_Y0(v, w, index_cap);
      break;
    case TensorMode::ExtremeOnly:
      break;  // only the extreme actions exist; no assembled matrices
  }
  return t;
}

// ---------------------------------------------------------------------------
// Extreme actions on mixed-shift pairs.

ExtremeActions::ExtremeActions(ModuleRealization v, ModuleRealization w,
                               std::optional<long> lowest_col,
                               std::optional<long> highest_col)
    : v_(std::move(v)), w_(std::move(w)), low_(lowest_col), high_(highest_col) {
  if (low_) {
    if (*low_ < 0 || *low_ >= v_.dim())
      throw VerificationError("lowest column out of range");
    const long probe = std::max(8L, v_.depth() + 2);
    for (long n = 0; n <= probe; ++n) {
      const ActColumn c = v_.act(GenKind::XMinus, n, *low_);
      if (c.poisoned)
        throw VerificationError("cannot certify the lowest vector: poisoned action");
      if (!c.is_zero())
        throw VerificationError("left column is not a lowest vector");
    }
  }
  if (high_) {
    if (*high_ < 0 || *high_ >= w_.dim())
      throw VerificationError("highest column out of range");
    const long probe = std::max(8L, w_.depth() + 2);
    for (long n = 0; n <= probe; ++n) {
      const ActColumn c = w_.act(GenKind::XPlus, n, *high_);
      if (c.poisoned)
        throw VerificationError("cannot certify the highest vector: poisoned action");
      if (!c.is_zero())
        throw VerificationError("right column is not a highest vector");
    }
  }
}

Rat ExtremeActions::xi_scalar(const ModuleRealization& m, long col, long t,
                              bool* poisoned) const {
  const ActColumn c = m.act(GenKind::Xi, t, col);
  if (c.poisoned) {
    *poisoned = true;
    return Rat(0);
  }
  if (c.v.empty()) return Rat(0);
  if (c.v.size() != 1 || c.v.begin()->first != col)
    throw VerificationError("xi is not scalar on the extreme vector");
  return c.v.begin()->second;
}

// xi(u)(v_- (x) w) = xi(u) v_- (x) xi(u) w: a product of the scalar series on
// the lowest vector with the xi action on the other leg.
ActColumn ExtremeActions::xi_on_lowest(long p, long wcol) const {
  if (!low_) throw VerificationError("no lowest column was provided");
  if (wcol < 0 || wcol >= w_.dim()) throw VerificationError("column out of range");
  ActColumn out;
  for (long t = v_.xi_floor() - 1; t <= p - w_.xi_floor(); ++t) {
    bool pois = false;
    const Rat phi = xi_scalar(v_, *low_, t, &pois);
    if (pois) return ActColumn::poison();
    if (phi == 0) continue;
    const ActColumn wc = w_.act(GenKind::Xi, p - 1 - t, wcol);
    if (wc.poisoned) return ActColumn::poison();
    for (const auto& [r, x] : wc.v) out.add(pair_index(*low_, r), Rat(phi * x));
  }
  return out;
}

ActColumn ExtremeActions::xminus_on_lowest(long n, long wcol) const {
  if (!low_) throw VerificationError("no lowest column was provided");
  if (wcol < 0 || wcol >= w_.dim()) throw VerificationError("column out of range");
  const ActColumn wc = w_.act(GenKind::XMinus, n, wcol);
  if (wc.poisoned) return ActColumn::poison();
  ActColumn out;
  for (const auto& [r, x] : wc.v) out.add(pair_index(*low_, r), x);
  return out;
}

// x^-(u)(v (x) omega) = v (x) x^-(u) omega + <x^-(u) v (x) xi(u) omega>_+.
ActColumn ExtremeActions::xminus_on_highest(long n,
                                            const std::map<long, Rat>& v) const {
  if (!high_) throw VerificationError("no highest column was provided");
  if (n < 0) return {};
  const long hc = *high_;
  const ActColumn womega = w_.act(GenKind::XMinus, n, hc);
  if (womega.poisoned) return ActColumn::poison();
  ActColumn out;
  for (const auto& [i, ci] : v) {
    if (i < 0 || i >= v_.dim()) throw VerificationError("column out of range");
    if (ci == 0) continue;
    for (const auto& [r, x] : womega.v) out.add(pair_index(i, r), Rat(ci * x));
  }
  for (long q = w_.xi_floor() - 1; q <= n - 1; ++q) {
    bool pois = false;
    const Rat psi = xi_scalar(w_, hc, q, &pois);
    if (pois) return ActColumn::poison();
    if (psi == 0) continue;
    const long m = n - 1 - q;
    ActColumn xv;
    for (const auto& [i, ci] : v)
      if (ci != 0) xv.add_scaled(v_.act(GenKind::XMinus, m, i), ci);
    if (xv.poisoned) return ActColumn::poison();
    for (const auto& [r, x] : xv.v) out.add(pair_index(r, hc), Rat(psi * x));
  }
  return out;
}

ExtremeActions extreme_actions(const ModuleRealization& v,
                               const ModuleRealization& w) {
  std::optional<long> lo;
  const long probe = std::max(8L, v.depth() + 2);
  for (long c = 0; c < v.dim(); ++c) {
    bool ok = true;
    for (long n = 0; ok && n <= probe; ++n) {
      const ActColumn a = v.act(GenKind::XMinus, n, c);
      if (a.poisoned || !a.is_zero()) ok = false;
    }
    if (ok) {
      if (lo) throw VerificationError("lowest vector is not unique");
      lo = c;
    }
  }
  if (!lo)
    throw VerificationError("left factor has no certifiable lowest vector");
  return ExtremeActions(v, w, lo, 0L);
}

// ---------------------------------------------------------------------------
// Formal spectral parameter.

void ZColumn::add(long row, const Poly& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = v.try_emplace(row, c);
  if (!fresh) {
    it->second = it->second + c;
    if (it->second.is_zero()) v.erase(it);
  }
}

ZColumn& ZColumn::add_scaled(const ZColumn& o, const Poly& c) {
  poisoned = poisoned || o.poisoned;
  if (!c.is_zero())
    for (const auto& [row, val] : o.v) add(row, val * c);
  return *this;
}

ActColumn ZColumn::eval(const Rat& a) const {
  if (poisoned) return ActColumn::poison();
  ActColumn r;
  for (const auto& [row, p] : v) r.add(row, p.eval(a));
  return r;
}

long ZColumn::zdegree() const {
  long d = -1;
  for (const auto& [row, p] : v) d = std::max(d, p.degree());
  return d;
}

class ZTensor::Impl {
 public:
  Impl(const ModuleRealization& v, const ModuleRealization& w, TensorMode mode,
       TensorSide zside, long cap)
      : v_(v), w_(w) {
    if (mode == TensorMode::HopfY0) {
      hopf_ = true;
      auto base = [](const ModuleRealization& m, bool shifted) {
        std::array<std::vector<ZColumn>, 4> b;
        const std::array<std::pair<GenKind, long>, 4> want{
            {{GenKind::XMinus, 0},
             {GenKind::XPlus, 0},
             {GenKind::Xi, 0},
             {GenKind::Xi, 1}}};
        for (int t = 0; t < 4; ++t) {
          b[t].resize(static_cast<std::size_t>(m.dim()));
          for (long c = 0; c < m.dim(); ++c)
            b[t][static_cast<std::size_t>(c)] =
                factor_act(m, shifted, want[t].first, want[t].second, c);
        }
        return b;
      };
      core_.init(v_.dim(), w_.dim(), cap, base(v_, zside == TensorSide::Left),
                 base(w_, zside == TensorSide::Right));
      return;
    }
    onedim_left_ = mode == TensorMode::OneDimLeft;
    twisted_ = onedim_left_ ? GenKind::XPlus : GenKind::XMinus;
    const ModuleRealization& od = onedim_left_ ? v_ : w_;
    const std::vector<Rat> sc = poly_coeffs(od.top());
    const bool z_on_onedim = (zside == TensorSide::Left) == onedim_left_;
    modshift_ = !z_on_onedim;
    if (z_on_onedim) {
      cpoly_ = shifted_coeffs(sc);
    } else {
      cpoly_.reserve(sc.size());
      for (const Rat& x : sc) cpoly_.push_back(Poly(x));
    }
  }

  ZColumn act(GenKind k, long n, long col) const {
    if (hopf_) return core_.act(k, n, col);
    const ModuleRealization& m = onedim_left_ ? w_ : v_;
    if (k != GenKind::Xi && k != twisted_) return factor_act(m, modshift_, k, n, col);
    if (k == twisted_ && n < 0) return {};
    ZColumn out;
    for (std::size_t j = 0; j < cpoly_.size(); ++j) {
      if (cpoly_[j].is_zero()) continue;
      out.add_scaled(factor_act(m, modshift_, k, n + static_cast<long>(j), col),
                     cpoly_[j]);
    }
    return out;
  }

 private:
  ModuleRealization v_, w_;
  Y0Core<ZColumn> core_;
  bool hopf_ = false;
  bool onedim_left_ = false;
  bool modshift_ = false;
  GenKind twisted_ = GenKind::XPlus;
  std::vector<Poly> cpoly_;
};

ZColumn ZTensor::act(GenKind k, long n, long col) const {
  if (!impl_) throw VerificationError("empty polynomial-parameter tensor");
  return impl_->act(k, n, col);
}

ZTensor tensor_poly_parameter(const ModuleRealization& v,
                              const ModuleRealization& w, TensorMode mode,
                              TensorSide zside, long index_cap) {
  ZTensor z;
  z.v_ = v;
  z.w_ = w;
  z.mode_ = mode;
  z.zside_ = zside;
  switch (mode) {
    case TensorMode::HopfY0:
      if (v.shift() != 0 || w.shift() != 0)
        throw VerificationError("coproduct tensor factors must both have shift 0");
      z.dim_ = v.dim() * w.dim();
      z.depth_ = v.depth() + w.depth();
      z.cap_ = index_cap >= 0 ? index_cap : 2 * z.depth_ + 8;
      break;
    case TensorMode::OneDimLeft:
    case TensorMode::OneDimRight: {
      const ModuleRealization& od = mode == TensorMode::OneDimLeft ? v : w;
      const ModuleRealization& m = mode == TensorMode::OneDimLeft ? w : v;
      if (od.dim() != 1 || !od.top().is_polynomial())
        throw VerificationError(
            "twisting factor is not a polynomial one-dimensional module");
      z.dim_ = m.dim();
      z.depth_ = m.depth();
      z.cap_ = -1;  // no commutator recursion, no cap
      break;
    }
    case TensorMode::ExtremeOnly:
      throw VerificationError("extreme-only tensors carry no full action table");
  }
  z.impl_ = std::make_shared<ZTensor::Impl>(v, w, mode, zside, z.cap_);
  return z;
}

// ---------------------------------------------------------------------------
// Cyclicity witness.

namespace {

struct ZKey {
  long mcol = 0, zpow = 0, wcol = 0;
  auto operator<=>(const ZKey&) const = default;
};
using ZVec = std::map<ZKey, Rat>;

void zv_add(ZVec& v, const ZKey& k, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = v.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) v.erase(it);
  }
}

}  // namespace

CyclicityWitness cyclicity_witness(const ModuleRealization& verma,
                                   const ModuleRealization& w, const LinRat& s,
                                   long span_depth) {
  if (verma.family().name != "Verma")
    throw VerificationError("cyclicity witness needs a Verma left factor");
  if (!s.is_polynomial() || s.num_degree() < 1)
    throw VerificationError("cyclicity witness needs a nonconstant polynomial");
  if (!(s * w.top()).is_one())
    throw VerificationError("right factor top is not the inverse of the polynomial");
  if (span_depth < 1 || span_depth > 2)
    throw VerificationError("witness certifies composite depth 1 or 2 only");
  if (verma.depth() < span_depth + 1)
    throw VerificationError("Verma factor needs spare depth above the certified slice");
  if (w.depth() < span_depth)
    throw VerificationError("right factor is shallower than the certified slice");

  const long cap = verma.index_cap() ? *verma.index_cap() : verma.depth() + 2;
  const long fw = w.xi_floor();
  std::vector<Rat> sc;
  {
    const Poly p = s.num_poly();
    for (long j = 0; j <= p.degree(); ++j) sc.push_back(p.coeff(j));
  }

  CyclicityWitness cw;
  bool poison = false;

  auto psi = [&](long q) -> Rat {
    const ActColumn c = w.act(GenKind::Xi, q, 0);
    if (c.poisoned) {
      poison = true;
      return Rat(0);
    }
    if (c.v.empty()) return Rat(0);
    if (c.v.size() != 1 || c.v.begin()->first != 0)
      throw VerificationError("xi is not scalar on the right factor's top");
    return c.v.begin()->second;
  };

  // x^-_n on (M basis vcol) (x) omega, with the formal parameter on the M leg:
  // v (x) x^-_n omega + sum_{m+q=n-1} (tau_z x^-)_m v (x) psi_q omega.
  auto e3z = [&](long n, long vcol) -> ZVec {
    ZVec out;
    const ActColumn wm = w.act(GenKind::XMinus, n, 0);
    if (wm.poisoned) {
      poison = true;
      return out;
    }
    for (const auto& [r, x] : wm.v) zv_add(out, {vcol, 0, r}, x);
    for (long q = fw - 1; q <= n - 1; ++q) {
      const Rat pq = psi(q);
      if (poison) return out;
      if (pq == 0) continue;
      const long mm = n - 1 - q;
      for (long t = 0; t <= mm; ++t) {
        const ActColumn xv = verma.act(GenKind::XMinus, t, vcol);
        if (xv.poisoned) {
          poison = true;
          return out;
        }
        const Rat b = Rat(binom(mm, t) * pq);
        for (const auto& [r, x] : xv.v) zv_add(out, {r, mm - t, 0}, Rat(b * x));
      }
    }
    return out;
  };

  // Stage A: <s(u) x^-(u)>_+ images reproduce the binomial expansion of
  // x^-(u - z) v' (x) omega (rel: key), and binomial inversion recovers every
  // x^-_m v' (x) omega from them, certifying all of M (x) C[z] (x) omega.
  cw.key_ok = cw.newton_ok = true;
  for (long vcol = 0; vcol < verma.dim() && !poison; ++vcol) {
    if (verma.vec(vcol).depth + 1 > verma.depth()) continue;
    std::vector<ZVec> t_modes;
    for (long p = 0; p <= cap && !poison; ++p) {
      ZVec t;
      for (std::size_t j = 0; j < sc.size(); ++j) {
        if (sc[j] == 0) continue;
        const ZVec part = e3z(p + static_cast<long>(j), vcol);
        if (poison) break;
        for (const auto& [k, x] : part) zv_add(t, k, Rat(sc[j] * x));
      }
      ZVec g;
      for (long k = 0; k <= p && !poison; ++k) {
        const ActColumn xv = verma.act(GenKind::XMinus, k, vcol);
        if (xv.poisoned) {
          poison = true;
          break;
        }
        const Rat b = binom(p, k);
        for (const auto& [r, x] : xv.v) zv_add(g, {r, p - k, 0}, Rat(b * x));
      }
      if (poison) break;
      if (t != g) cw.key_ok = false;
      t_modes.push_back(std::move(t));
    }
    for (long m = 0; m <= cap && !poison; ++m) {
      ZVec acc;
      for (long k = 0; k <= m; ++k) {
        Rat b = binom(m, k);
        if ((m - k) % 2 != 0) b = -b;
        for (const auto& [key, x] : t_modes[static_cast<std::size_t>(k)])
          zv_add(acc, {key.mcol, key.zpow + (m - k), key.wcol}, Rat(b * x));
      }
      ZVec direct;
      const ActColumn xv = verma.act(GenKind::XMinus, m, vcol);
      if (xv.poisoned) {
        poison = true;
        break;
      }
      for (const auto& [r, x] : xv.v) zv_add(direct, {r, 0, 0}, x);
      if (acc != direct) cw.newton_ok = false;
    }
  }

  const std::vector<long> wd = w.dims();
  const std::vector<long> md = verma.dims();
  std::vector<std::vector<long>> wblock(static_cast<std::size_t>(w.depth()) + 1);
  for (long c = 0; c < w.dim(); ++c)
    wblock[static_cast<std::size_t>(w.vec(c).depth)].push_back(c);
  const long nb = cap + fw;

  // Stage B: x^-_n (i (x) omega) = i (x) x^-_n omega + (middle in
  // M (x) C[z] (x) omega, certified above); the residues must span W's first
  // block.
  cw.depth1_ok = true;
  {
    std::map<long, std::size_t> pos;
    for (std::size_t i = 0; i < wblock[1].size(); ++i) pos[wblock[1][i]] = i;
    RowSpace rs(wd[1]);
    for (long n = 0; n <= nb; ++n) {
      const ActColumn c = w.act(GenKind::XMinus, n, 0);
      if (c.poisoned) {
        poison = true;
        break;
      }
      QVec row(static_cast<std::size_t>(wd[1]), Rat(0));
      for (const auto& [r, x] : c.v) {
        if (w.vec(r).depth != 1) {
          cw.depth1_ok = false;
          continue;
        }
        row[pos.at(r)] = x;
      }
      rs.add(std::move(row));
    }
    if (rs.dim() != wd[1]) cw.depth1_ok = false;
  }

  // Stage C: on omega_e (x) w1 the coproduct estimate splits x^-_n into the
  // residual omega_e (x) x^-_n w1, a middle in M_1 (x) C[z] (x) W_1 (certified
  // by stage B), and error terms in M_{>=2} (x) C[z] (x) omega (certified by
  // stage A). The residues must span W's second block.
  if (span_depth >= 2) {
    cw.middles_ok = true;
    cw.span_ok = true;
    std::map<long, std::size_t> pos2;
    for (std::size_t i = 0; i < wblock[2].size(); ++i) pos2[wblock[2][i]] = i;
    RowSpace rs2(wd[2]);
    for (long w1 : wblock[1]) {
      for (long n = 0; n <= nb && !poison; ++n) {
        for (long q = fw - 1; q <= n - 1; ++q) {
          const ActColumn xiq = w.act(GenKind::Xi, q, w1);
          if (xiq.poisoned) {
            poison = true;
            break;
          }
          for (const auto& [r, x] : xiq.v)
            if (w.vec(r).depth != 1) cw.middles_ok = false;
          const long mm = n - 1 - q;
          for (long t = 0; t <= mm; ++t) {
            const ActColumn xv = verma.act(GenKind::XMinus, t, 0);
            if (xv.poisoned) {
              poison = true;
              break;
            }
            for (const auto& [r, x] : xv.v)
              if (verma.vec(r).depth != 1) cw.middles_ok = false;
          }
        }
        if (poison) break;
        const ActColumn wm = w.act(GenKind::XMinus, n, w1);
        if (wm.poisoned) {
          poison = true;
          break;
        }
        QVec row(static_cast<std::size_t>(wd[2]), Rat(0));
        for (const auto& [r, x] : wm.v) {
          if (w.vec(r).depth != 2) {
            cw.span_ok = false;
            continue;
          }
          row[pos2.at(r)] = x;
        }
        rs2.add(std::move(row));
      }
    }
    if (rs2.dim() != wd[2]) cw.span_ok = false;
  } else {
    cw.middles_ok = true;
    cw.span_ok = true;
  }

  for (long dm = 0; dm <= std::min(span_depth, verma.depth()); ++dm)
    for (long dw = 0; dm + dw <= span_depth && dw <= w.depth(); ++dw)
      cw.target += md[static_cast<std::size_t>(dm)] * wd[static_cast<std::size_t>(dw)];
  if (cw.key_ok && cw.newton_ok)
    for (long dm = 0; dm <= std::min(span_depth, verma.depth()); ++dm)
      cw.certified += md[static_cast<std::size_t>(dm)] * wd[0];
  if (cw.depth1_ok)
    for (long dm = 0; dm + 1 <= span_depth; ++dm)
      cw.certified += md[static_cast<std::size_t>(dm)] * wd[1];
  if (span_depth >= 2 && cw.middles_ok && cw.span_ok) cw.certified += md[0] * wd[2];

  if (poison) {
    cw.key_ok = cw.newton_ok = cw.depth1_ok = cw.middles_ok = cw.span_ok = false;
    cw.certified = 0;
  }
  return cw;
}

}  // namespace yang
