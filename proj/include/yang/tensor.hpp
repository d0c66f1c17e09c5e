#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "yang/modules_sl2.hpp"
#include "yang/poly.hpp"

namespace yang {

enum class TensorSide { Left, Right };
enum class TensorMode { OneDimLeft, OneDimRight, HopfY0, ExtremeOnly };

// Pullback of V through iota_1^s (Left) or iota_2^s (Right) for a polynomial
// l-weight s: the twisted raising (Left) or lowering (Right) series becomes
// the principal part of s(u) times the old one, xi(u) is multiplied by s(u),
// the other side is untouched. The basis is V's with weights moved by wt(s);
// the shift grows by deg s. Series tables transfer when V carries them.
ModuleRealization tensor_onedim(const LinRat& s, const ModuleRealization& v,
                                TensorSide side);

// Tensor product of two unshifted realizations through the Yangian coproduct:
// x^+_0, x^-_0, xi_0 are primitive, Delta(xi_1) adds xi_0 (x) xi_0
// - 2 x^-_0 (x) x^+_0, and with T := xi_1 - 1/2 xi_0^2 the higher generators
// are built by the commutator recursion x^/-+/_{n+1} = -+1/2 [Delta(T), x_n]
// and xi_p = [x^+_p, x^-_0]. Generator indices above the cap (default
// 2 * depth + 8) come back poisoned; the cap is reported via index_cap().
// Basis pairs are flattened row-major: (i, j) -> i * w.dim() + j.
ModuleRealization tensor_Y0(const ModuleRealization& v,
                            const ModuleRealization& w, long index_cap = -1);

// Factor bookkeeping around a composite realization. The composite is
// engine-backed except in ExtremeOnly mode, where only the partial oracle
// below applies.
struct TensorRealization {
  ModuleRealization left, right;
  TensorMode mode = TensorMode::ExtremeOnly;
  ModuleRealization composite;

  long pair_index(long i, long j) const { return i * right.dim() + j; }
};

TensorRealization make_tensor(const ModuleRealization& v,
                              const ModuleRealization& w, TensorMode mode,
                              long index_cap = -1);

// Partial action oracle for mixed-shift pairs: exact formulas on the extreme
// tensor legs only. Columns are flattened as in TensorRealization with
// w.dim() as the stride. Absent extreme columns restrict the usable calls;
// provided ones are certified extreme at construction.
class ExtremeActions {
 public:
  ExtremeActions(ModuleRealization v, ModuleRealization w,
                 std::optional<long> lowest_col,
                 std::optional<long> highest_col);

  const ModuleRealization& left() const { return v_; }
  const ModuleRealization& right() const { return w_; }
  std::optional<long> lowest_col() const { return low_; }
  std::optional<long> highest_col() const { return high_; }
  long pair_index(long i, long j) const { return i * w_.dim() + j; }

  // xi_p (v_- (x) w) = mode p of xi(u) v_- (x) xi(u) w.
  ActColumn xi_on_lowest(long p, long wcol) const;
  // x^-_n (v_- (x) w) = v_- (x) x^-_n w.
  ActColumn xminus_on_lowest(long n, long wcol) const;
  // x^-_n (v (x) omega) = v (x) x^-_n omega
  //   + mode n of < x^-(u) v (x) xi(u) omega >_+, any v in V.
  ActColumn xminus_on_highest(long n, const std::map<long, Rat>& v) const;

 private:
  Rat xi_scalar(const ModuleRealization& m, long col, long t,
                bool* poisoned) const;

  ModuleRealization v_, w_;
  std::optional<long> low_, high_;
};

// Locates the lowest l-weight column of v (unique column killed by every
// probed x^- mode), takes w's top column as highest, and certifies both.
ExtremeActions extreme_actions(const ModuleRealization& v,
                               const ModuleRealization& w);

// Column with entries in Q[z], the formal spectral parameter of one factor.
struct ZColumn {
  std::map<long, Poly> v;
  bool poisoned = false;

  static ZColumn poison() { return {{}, true}; }
  void add(long row, const Poly& c);
  ZColumn& add_scaled(const ZColumn& o, const Poly& c);
  bool is_zero() const { return !poisoned && v.empty(); }
  ActColumn eval(const Rat& a) const;
  long zdegree() const;  // max z-degree over entries, -1 for zero
  bool operator==(const ZColumn& o) const = default;
};

// Tensor realization over Q[z]: the factor on `zside` is spectrally shifted
// by the formal parameter z, i.e. the action is (tau_z (x) 1) Delta or
// (1 (x) tau_z) Delta. Entries are exact polynomials in z; evaluating at
// z = a recovers the tensor with that factor shifted by a. Full-action
// modes only.
class ZTensor {
 public:
  ZTensor() = default;

  TensorMode mode() const { return mode_; }
  TensorSide zside() const { return zside_; }
  long dim() const { return dim_; }
  long depth() const { return depth_; }
  long index_cap() const { return cap_; }
  const ModuleRealization& left() const { return v_; }
  const ModuleRealization& right() const { return w_; }

  ZColumn act(GenKind k, long n, long col) const;

 private:
  friend ZTensor tensor_poly_parameter(const ModuleRealization&,
                                       const ModuleRealization&, TensorMode,
                                       TensorSide, long);
  class Impl;
  std::shared_ptr<Impl> impl_;
  ModuleRealization v_, w_;
  TensorMode mode_ = TensorMode::HopfY0;
  TensorSide zside_ = TensorSide::Left;
  long dim_ = 0, depth_ = 0, cap_ = 0;
};

ZTensor tensor_poly_parameter(const ModuleRealization& v,
                              const ModuleRealization& w, TensorMode mode,
                              TensorSide zside = TensorSide::Left,
                              long index_cap = -1);

// Concrete generation certificate for M(e) (x) C[z] (x) W with W a
// realization of L(s^{-1}), s polynomial: starting from the pure tensor of
// the two top vectors, the exact moves (the formal-z twisted lowering action
// on top-leg pairs and the exact extreme lowering formula) certify every
// composite basis vector of depth <= span_depth. Supports span_depth <= 2;
// the Verma factor must keep one spare depth above what the slice needs.
struct CyclicityWitness {
  bool key_ok = false;      // twisted action equals the binomial right side
  bool newton_ok = false;   // binomial inversion recovers each x^-_m v'
  bool depth1_ok = false;   // v (x) (first W block) certified exactly
  bool middles_ok = false;  // cross terms stay inside the certified span
  bool span_ok = false;     // lowering images span the second W block
  long certified = 0;       // certified pairs of composite depth <= span_depth
  long target = 0;          // all pairs of composite depth <= span_depth

  bool ok() const {
    return key_ok && newton_ok && depth1_ok && middles_ok && span_ok &&
           certified == target && target > 0;
  }
};

CyclicityWitness cyclicity_witness(const ModuleRealization& verma,
                                   const ModuleRealization& w, const LinRat& s,
                                   long span_depth);

}  // namespace yang
