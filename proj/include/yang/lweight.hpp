#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "yang/cartan.hpp"
#include "yang/linrat.hpp"
#include "yang/rational.hpp"

namespace yang {

// Weight in fundamental-weight coordinates: c[i] is the coefficient of w_i.
struct Weight {
  std::vector<Rat> c;

  Weight() = default;
  explicit Weight(long rank) : c(rank) {}
  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const;
  Weight operator-() const;
  Weight operator*(const Rat& s) const;
  bool operator==(const Weight& o) const = default;
  auto operator<=>(const Weight& o) const = default;
  bool is_zero() const;
  std::string str() const;
};

// Rational l-weight: one monic rational function per node, a group under
// componentwise multiplication. Each component is the eigenvalue series
// xi_i(u) acts by on the corresponding vector.
class LWeight {
 public:
  LWeight() = default;
  explicit LWeight(long rank) : comps_(rank) {}
  static LWeight from_components(std::vector<LinRat> comps);

  long rank() const { return static_cast<long>(comps_.size()); }
  const LinRat& comp(long i) const { return comps_[i]; }
  const std::vector<LinRat>& comps() const { return comps_; }
  LWeight with_comp(long i, LinRat f) const;

  LWeight operator*(const LWeight& o) const;
  LWeight operator/(const LWeight& o) const;
  LWeight inverse() const;
  LWeight pow(int k) const;
  bool operator==(const LWeight& o) const = default;
  auto operator<=>(const LWeight& o) const = default;
  bool is_one() const;

  // Componentwise root shift: f_i(u) -> f_i(u - a).
  LWeight tau(const Rat& a) const;

  // True iff every component is a polynomial (the monoid generated by Psi).
  bool in_monoid_D() const;

  // Coweight: k_i = degree of component i.
  std::vector<long> coweight() const;
  // Weight: coefficient of w_i is the subleading expansion coefficient over d_i.
  Weight weight(const CartanData& cd) const;

  std::string str() const;  // canonical Psi-factored form, "1" for the identity
  static LWeight parse(const CartanData& cd, const std::string& s);

 private:
  std::vector<LinRat> comps_;
};

// Generators of the l-weight group.
LWeight psi(const CartanData& cd, long i, const Rat& a);
LWeight gen_Y(const CartanData& cd, long i, const Rat& a);
LWeight gen_A(const CartanData& cd, long i, const Rat& a);

// Exponent vector of a product of A_{i,a}: key (i, a), value the exponent.
using AMonomial = std::map<std::pair<long, Rat>, long>;

LWeight a_monomial_build(const CartanData& cd, const AMonomial& m);
// Unique decomposition as a product of A_{i,a}, or nullopt when the Psi-exponent
// system has no integer solution.
std::optional<AMonomial> a_monomial_decompose(const CartanData& cd,
                                              const LWeight& f);

}  // namespace yang
