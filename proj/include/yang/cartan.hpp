#pragma once

#include <string>
#include <vector>

#include "yang/rational.hpp"

namespace yang {

// Cartan data of a finite simple type, with symmetrizers d_i normalized to
// coprime positive integers so that d_i c_ij = d_j c_ji.
struct CartanData {
  std::string label;                 // "A1", "B2", "G2", ...
  int rank = 0;
  std::vector<std::vector<int>> c;   // c[i][j] = <alpha_i^vee, alpha_j>, 0-based
  std::vector<int> d;                // d_i = (alpha_i, alpha_i)/2 up to the coprime normalization
  std::vector<std::vector<Rat>> dij; // d_ij = (alpha_i, alpha_j)/2 = d_i c_ij / 2
  int dual_coxeter = 0;              // h^vee
  Rat kappa;                         // (1/2) max_i(d_i) h^vee
  std::vector<int> bar;              // diagram involution i -> bar(i), 0-based
  std::vector<std::vector<int>> positive_roots;  // coefficients over simple roots, height order

  // <alpha_i^vee, beta> for beta given in simple-root coordinates; i is 0-based.
  int coroot_pairing(int i, const std::vector<int>& beta) const;
  // Simple reflection s_i in simple-root coordinates.
  std::vector<int> reflect(int i, const std::vector<int>& beta) const;
  // Convert fundamental-weight coordinates to simple-root coordinates (solves
  // the Cartan matrix system over Q).
  std::vector<Rat> to_root_coords(const std::vector<Rat>& omega_coords) const;
  // beta in simple-root coordinates expressed in fundamental-weight coordinates.
  std::vector<Rat> to_weight_coords(const std::vector<Rat>& root_coords) const;
  // Dominance order: mu - lambda a nonnegative rational combination of simple
  // roots (arguments in fundamental-weight coordinates).
  bool weight_leq(const std::vector<Rat>& lambda, const std::vector<Rat>& mu) const;
  // Highest root in simple-root coordinates.
  std::vector<int> highest_root() const;
};

// Builds the table for a label "Xn" (A..G); throws ParseError on bad labels.
CartanData cartan(const std::string& label);

}  // namespace yang
