#pragma once

#include <optional>
#include <vector>

#include "yang/poly.hpp"
#include "yang/rational.hpp"

namespace yang {

using QVec = std::vector<Rat>;

// Dense matrix over Q with exact elimination.
class QMat {
 public:
  QMat() = default;
  QMat(long rows, long cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static QMat identity(long n);

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  Rat& at(long i, long j) { return a_[i * cols_ + j]; }
  const Rat& at(long i, long j) const { return a_[i * cols_ + j]; }

  QMat operator+(const QMat& o) const;
  QMat operator-(const QMat& o) const;
  QMat operator*(const QMat& o) const;
  QMat operator*(const Rat& s) const;
  QVec operator*(const QVec& v) const;
  bool operator==(const QMat& o) const = default;

  bool is_zero() const;
  Rat trace() const;
  QMat pow(long k) const;  // square only

  // In-place reduced row echelon form; returns the pivot columns.
  std::vector<long> rref();
  long rank() const;

  // Basis of the right kernel (columns x with Ax = 0).
  std::vector<QVec> kernel() const;
  // One solution of Ax = b, or nullopt if inconsistent.
  std::optional<QVec> solve(const QVec& b) const;

  // Characteristic polynomial det(uI - A), exact (Faddeev-LeVerrier).
  Poly charpoly() const;

 private:
  long rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

// Incremental row space in echelon form: membership and growth certificates
// for spans built one vector at a time.
class RowSpace {
 public:
  explicit RowSpace(long width) : width_(width) {}
  long dim() const { return static_cast<long>(rows_.size()); }
  long width() const { return width_; }
  // Adds the vector to the span; returns true when the dimension grew.
  bool add(QVec v);
  bool contains(QVec v) const;

 private:
  // Reduces v against the stored rows; returns the leading column or width_.
  long reduce(QVec& v) const;
  long width_;
  std::vector<QVec> rows_;        // each with leading coefficient 1
  std::vector<long> lead_;        // strictly increasing reinsertion keeps sorted
};

}  // namespace yang
