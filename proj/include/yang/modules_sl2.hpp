#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "yang/lweight.hpp"
#include "yang/qchar.hpp"
#include "yang/qrat.hpp"
#include "yang/yangian_sl2.hpp"

namespace yang {

// Image of one basis vector under one generator mode, sparse over the
// retained basis. `poisoned` marks columns whose exact image leaves the
// retained window (depth or index cap); their values are dropped.
struct ActColumn {
  std::map<long, Rat> v;
  bool poisoned = false;

  static ActColumn poison() { return {{}, true}; }
  void add(long row, const Rat& c);
  ActColumn& add_scaled(const ActColumn& o, const Rat& c);
  bool is_zero() const { return !poisoned && v.empty(); }
  bool operator==(const ActColumn& o) const = default;
};

// Column-major sparse matrix over the basis.
struct SparseMat {
  long rows = 0;
  std::vector<ActColumn> cols;

  // Matrix applied to a column; poison propagates.
  ActColumn apply(const ActColumn& x) const;
};

struct BasisVec {
  long depth = 0;  // root-height drop from the top vector
  Rat weight;      // fundamental-weight coordinate
  std::string label;
  // PBW representative when one exists: the vector is scale * word * omega.
  std::optional<Word> word;
  Rat scale = Rat(1);
};

// Closed-form rational entries of the generator series, present for the
// explicit families: entry[kind][{row, col}] is the coefficient of basis
// vector `row` in (series applied to basis vector `col`).
struct SeriesTables {
  std::array<std::map<std::pair<long, long>, QRat>, 3> entry;

  const QRat* find(GenKind k, long row, long col) const;
  void set(GenKind k, long row, long col, QRat f);
};

// Action provider behind a realization. Implementations are immutable after
// construction and act() is safe to call concurrently.
class ActionEngine {
 public:
  virtual ~ActionEngine() = default;
  virtual ActColumn act(GenKind k, long n, long col) const = 0;
  virtual const SeriesTables* series() const { return nullptr; }
};

// Rebuildable description of how the realization was made; drives spectral
// shifts and dumps.
struct FamilySpec {
  std::string name;            // Lplus | N | FrakL | L | Lminus | Verma | Simple | Weyl | ...
  std::vector<Rat> params;     // rational parameters, in the family's order
  std::vector<LinRat> lparams; // e for Verma/Simple, (r, s) for Weyl
};

// Depth-truncated realization of a module over the shifted Yangian of sl2
// with exact rational matrix entries. Immutable and shareable.
class ModuleRealization {
 public:
  ModuleRealization() = default;
  ModuleRealization(FamilySpec fam, long shift, long depth, LinRat top,
                    std::vector<BasisVec> basis,
                    std::shared_ptr<const ActionEngine> engine,
                    std::optional<long> index_cap = std::nullopt);

  const FamilySpec& family() const { return fam_; }
  long shift() const { return shift_; }
  long xi_floor() const { return -shift_; }
  long depth() const { return depth_; }
  const LinRat& top() const { return top_; }
  long dim() const { return static_cast<long>(basis_.size()); }
  const std::vector<BasisVec>& basis() const { return basis_; }
  const BasisVec& vec(long i) const { return basis_[i]; }
  std::optional<long> index_cap() const { return index_cap_; }
  const std::shared_ptr<const ActionEngine>& engine() const { return engine_; }

  // Column indices at root-height drop k, 0 <= k <= depth.
  const std::vector<long>& block(long k) const;
  Rat block_weight(long k) const;
  std::vector<long> dims() const;  // per-block dimensions

  ActColumn act(GenKind k, long n, long col) const;
  SparseMat mode_matrix(GenKind k, long n) const;
  const SeriesTables* series() const { return engine_->series(); }

 private:
  FamilySpec fam_;
  long shift_ = 0;
  long depth_ = 0;
  LinRat top_;
  std::vector<BasisVec> basis_;
  std::vector<std::vector<long>> blocks_;
  std::shared_ptr<const ActionEngine> engine_;
  std::optional<long> index_cap_;
};

// Explicit families with closed-form rational action tables. For the finite
// family L(a, b) the precondition is b - a a nonnegative integer.
ModuleRealization make_lplus(const Rat& a, long depth);
ModuleRealization make_n(const Rat& a, long depth);
ModuleRealization make_frakl(const Rat& a, const Rat& b, long depth);
ModuleRealization make_l_finite(const Rat& a, const Rat& b, long depth);
ModuleRealization make_lminus(const Rat& b, long depth);
// Dispatcher over family names as written above the helpers:
// "Lplus", "N", "FrakL", "L", "Lminus".
ModuleRealization make_explicit(const std::string& family,
                                const std::vector<Rat>& params, long depth);

// Verma module M(e): basis of ascending PBW words in the x^-_n with
// n <= index_cap, straightening-evaluated actions. Columns whose exact image
// needs words outside the window are poisoned. index_cap < 0 picks the
// default depth + 2.
ModuleRealization make_verma(const LinRat& e, long depth, long index_cap = -1);

// Simple quotient L(e) = M(e)/radical, built depth by depth: candidate
// vectors are x^-_n images of the previous block, ranked by the exact pairing
// against x^+ words (the radical is the pairing kernel). Actions are exact at
// every mode; only the depth edge poisons x^- columns.
ModuleRealization make_simple(const LinRat& e, long depth);

// Weyl module W(r, s) for polynomial r, s: quotient of M(s^{-1} r) by the
// depth-saturated submodule generated by the coefficients of
// <s(u) x^-(u)>_+ omega. Basis: PBW words with letters < deg s; actions are
// exact at every mode via rewriting by those coefficients.
ModuleRealization make_weyl(const LinRat& r, const LinRat& s, long depth);

// Quotient of a realization by its radical (the kernel of the pairing
// against x^+ words applied through the realization's own matrices).
ModuleRealization radical_quotient(const ModuleRealization& v);

// Generalized eigenspace decomposition of the commuting xi_p blocks
// (xi_floor <= p <= xi_floor + xi_modes) per weight block, reassembled into
// monic rational eigenvalue series; emits the q-character. Throws
// VerificationError on poisoned xi columns, non-commuting blocks, irrational
// spectra, or a failed series reconstruction.
QCharacter lweight_decomposition(const ModuleRealization& v, long xi_modes);

struct RelationStat {
  long checked = 0;
  long skipped = 0;
};

struct RelationViolation {
  std::string relation;  // instance id, e.g. "[x+_2, x-_1] - xi_3"
  long col = 0;
  std::string detail;
};

struct RelationReport {
  long n_max = 0;
  bool parallel = false;
  std::optional<long> index_cap;
  long checked = 0;   // (instance, column) pairs fully evaluated
  long skipped = 0;   // pairs skipped because some application was poisoned
  std::map<std::string, RelationStat> families;
  std::vector<RelationViolation> violations;

  bool passed() const { return violations.empty() && checked > 0; }
};

// Checks the defining relations as exact matrix identities for generator
// indices up to n_max (xi modes relative to the floor, including the unit
// and the zero below it). Columns with poisoned applications are skipped and
// counted. `parallel` switches the OpenMP column kernel; the serial path is
// the reference implementation.
RelationReport verify_relations(const ModuleRealization& v, long n_max,
                                bool parallel = true);

// Pullback along u -> u - a: roots of all entries move by a, weights by
// -a * shift, the top l-weight by tau_a. Series-table realizations are
// substituted directly; factory-built ones are rebuilt on shifted data.
ModuleRealization spectral_shift(const ModuleRealization& v, const Rat& a);

}  // namespace yang
