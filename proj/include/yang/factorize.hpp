#pragma once

#include <utility>
#include <vector>

#include "yang/linrat.hpp"
#include "yang/rational.hpp"

namespace yang {

// k lies in Delta_b^a: always a subset of N, equal to {0,...,b-a-1} when
// b-a is a nonnegative integer and to all of N otherwise.
bool delta_contains(const Rat& a, const Rat& b, const Rat& k);

// Standard factorization of a rational sl2 l-weight into one-dimensional
// zeros, Kirillov-Reshetikhin zero/pole pairs, and negative-prefundamental
// poles. Parts are kept sorted ascending for determinism.
struct StandardFactorization {
  std::vector<Rat> positive;                  // zeros x_r
  std::vector<std::pair<Rat, Rat>> kr_pairs;  // (y_s, z_s), z_s - y_s a positive integer
  std::vector<Rat> negative;                  // poles w_t
  bool operator==(const StandardFactorization& o) const = default;

  LinRat reassemble() const;
  // All pairwise conditions of the defining property.
  bool is_standard() const;
};

// Greedy pairing: repeatedly extract the (zero, pole) pair with minimal
// positive integer gap z - y, ties by smallest y. Always succeeds.
StandardFactorization standard_factorize(const LinRat& e);

// Tarasov criterion for a tensor product of modules L_{b_i}^{a_i}, given as
// (a_i, b_i): irreducible iff b_i - a_j is outside Delta_i cap Delta_j for
// all i, j.
bool is_irreducible_tensor(const std::vector<std::pair<Rat, Rat>>& factors);

}  // namespace yang
