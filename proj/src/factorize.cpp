#include "yang/factorize.hpp"

#include <algorithm>

namespace yang {

bool delta_contains(const Rat& a, const Rat& b, const Rat& k) {
  if (!is_nonneg_int(k)) return false;
  if (is_nonneg_int(b - a)) return k < b - a;
  return true;
}

LinRat StandardFactorization::reassemble() const {
  LinRat e;
  for (const Rat& x : positive) e = e * LinRat::linear(x);
  for (const auto& [y, z] : kr_pairs)
    e = e * LinRat::linear(y) / LinRat::linear(z);
  for (const Rat& w : negative) e = e / LinRat::linear(w);
  return e;
}

bool StandardFactorization::is_standard() const {
  for (const auto& [y, z] : kr_pairs)
    if (!is_nonneg_int(z - y) || z == y) return false;
  // Distinct KR pairs do not interleave: z_s - y_l outside both Deltas.
  for (const auto& [ys, zs] : kr_pairs)
    for (const auto& [yl, zl] : kr_pairs)
      if (std::pair(ys, zs) != std::pair(yl, zl) &&
          delta_contains(ys, zs, zs - yl) && delta_contains(yl, zl, zs - yl))
        return false;
  for (const auto& [ys, zs] : kr_pairs)
    for (const Rat& x : positive)
      if (delta_contains(ys, zs, zs - x)) return false;
  for (const Rat& w : negative) {
    for (const Rat& x : positive)
      if (is_nonneg_int(w - x)) return false;
    for (const auto& [ys, zs] : kr_pairs)
      if (delta_contains(ys, zs, w - ys)) return false;
  }
  return true;
}

StandardFactorization standard_factorize(const LinRat& e) {
  std::vector<Rat> zeros, poles;
  for (const auto& [a, m] : e.roots()) {
    for (int k = 0; k < m; ++k) zeros.push_back(a);
    for (int k = 0; k > m; --k) poles.push_back(a);
  }
  StandardFactorization sf;
  for (;;) {
    // Minimal positive integer gap z - y, ties by smallest y.
    size_t best_y = zeros.size(), best_z = poles.size();
    for (size_t i = 0; i < zeros.size(); ++i)
      for (size_t j = 0; j < poles.size(); ++j) {
        Rat gap = poles[j] - zeros[i];
        if (!is_nonneg_int(gap) || gap == 0) continue;
        Rat best_gap = best_y == zeros.size() ? Rat(0)
                                              : Rat(poles[best_z] - zeros[best_y]);
        if (best_y == zeros.size() ||
            std::pair<Rat, Rat>(gap, zeros[i]) <
                std::pair<Rat, Rat>(best_gap, zeros[best_y])) {
          best_y = i;
          best_z = j;
        }
      }
    if (best_y == zeros.size()) break;
    sf.kr_pairs.push_back({zeros[best_y], poles[best_z]});
    zeros.erase(zeros.begin() + best_y);
    poles.erase(poles.begin() + best_z);
  }
  sf.positive = std::move(zeros);
  sf.negative = std::move(poles);
  std::sort(sf.positive.begin(), sf.positive.end());
  std::sort(sf.kr_pairs.begin(), sf.kr_pairs.end());
  std::sort(sf.negative.begin(), sf.negative.end());
  return sf;
}

bool is_irreducible_tensor(const std::vector<std::pair<Rat, Rat>>& factors) {
  for (const auto& [ai, bi] : factors)
    for (const auto& [aj, bj] : factors)
      if (delta_contains(ai, bi, bi - aj) && delta_contains(aj, bj, bi - aj))
        return false;
  return true;
}

}  // namespace yang
