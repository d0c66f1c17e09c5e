#include "yang/qmat.hpp"

#include <algorithm>
#include <stdexcept>

namespace yang {

QMat QMat::identity(long n) {
  QMat m(n, n);
  for (long i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMat QMat::operator+(const QMat& o) const {
  QMat r = *this;
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
  return r;
}

QMat QMat::operator-(const QMat& o) const {
  QMat r = *this;
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
  return r;
}

QMat QMat::operator*(const QMat& o) const {
  QMat r(rows_, o.cols_);
  for (long i = 0; i < rows_; ++i)
    for (long k = 0; k < cols_; ++k) {
      const Rat& x = at(i, k);
      if (x == 0) continue;
      for (long j = 0; j < o.cols_; ++j) r.at(i, j) += x * o.at(k, j);
    }
  return r;
}

QMat QMat::operator*(const Rat& s) const {
  QMat r = *this;
  for (auto& x : r.a_) x *= s;
  return r;
}

QVec QMat::operator*(const QVec& v) const {
  QVec r(rows_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j)
      if (at(i, j) != 0) r[i] += at(i, j) * v[j];
  return r;
}

bool QMat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rat& x) { return x == 0; });
}

Rat QMat::trace() const {
  Rat t;
  for (long i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

QMat QMat::pow(long k) const {
  QMat r = identity(rows_), b = *this;
  for (; k > 0; k >>= 1, b = b * b)
    if (k & 1) r = r * b;
  return r;
}

std::vector<long> QMat::rref() {
  std::vector<long> pivots;
  long row = 0;
  for (long col = 0; col < cols_ && row < rows_; ++col) {
    long p = -1;
    for (long i = row; i < rows_; ++i)
      if (at(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (long j = 0; j < cols_; ++j) std::swap(at(p, j), at(row, j));
    Rat inv = Rat(1) / at(row, col);
    for (long j = col; j < cols_; ++j) at(row, j) *= inv;
    for (long i = 0; i < rows_; ++i) {
      if (i == row || at(i, col) == 0) continue;
      Rat f = at(i, col);
      for (long j = col; j < cols_; ++j) at(i, j) -= f * at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

long QMat::rank() const {
  QMat m = *this;
  return static_cast<long>(m.rref().size());
}

std::vector<QVec> QMat::kernel() const {
  QMat m = *this;
  std::vector<long> pivots = m.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (long c : pivots) is_pivot[c] = true;
  std::vector<QVec> basis;
  for (long free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    QVec v(cols_);
    v[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVec> QMat::solve(const QVec& b) const {
  QMat aug(rows_, cols_ + 1);
  for (long i = 0; i < rows_; ++i) {
    for (long j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_) = b[i];
  }
  std::vector<long> pivots = aug.rref();
  if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
  QVec x(cols_);
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, cols_);
  return x;
}

Poly QMat::charpoly() const {
  if (rows_ != cols_) throw std::logic_error("charpoly of non-square matrix");
  long n = rows_;
  // Faddeev-LeVerrier: M_0 = I, c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I,
  // c_{n-k} = -tr(A M_k)/k.
  std::vector<Rat> c(n + 1);
  c[n] = 1;
  QMat m = identity(n);
  for (long k = 1; k <= n; ++k) {
    if (k > 1) {
      QMat shift = identity(n) * c[n - k + 1];
      m = *this * m + shift;
    }
    c[n - k] = -((*this * m).trace()) / Rat(k);
  }
  return Poly::from_coeffs(std::move(c));
}

long RowSpace::reduce(QVec& v) const {
  for (size_t r = 0; r < rows_.size(); ++r) {
    const Rat& x = v[lead_[r]];
    if (x == 0) continue;
    Rat f = x;
    for (long j = lead_[r]; j < width_; ++j) v[j] -= f * rows_[r][j];
  }
  for (long j = 0; j < width_; ++j)
    if (v[j] != 0) return j;
  return width_;
}

bool RowSpace::add(QVec v) {
  long lead = reduce(v);
  if (lead == width_) return false;
  Rat inv = Rat(1) / v[lead];
  for (long j = lead; j < width_; ++j) v[j] *= inv;
  // Back-substitute into existing rows to keep full reduction.
  for (size_t r = 0; r < rows_.size(); ++r) {
    Rat f = rows_[r][lead];
    if (f == 0) continue;
    for (long j = lead; j < width_; ++j) rows_[r][j] -= f * v[j];
  }
  auto pos = std::lower_bound(lead_.begin(), lead_.end(), lead);
  long idx = pos - lead_.begin();
  lead_.insert(pos, lead);
  rows_.insert(rows_.begin() + idx, std::move(v));
  return true;
}

bool RowSpace::contains(QVec v) const { return reduce(v) == width_; }

}  // namespace yang
