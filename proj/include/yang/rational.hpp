#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace yang {

// Exact rational scalar. All arithmetic in the library is over Q; results of
// mpq_class operators are always canonicalized.
using Rat = mpq_class;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "p" when the denominator is 1, otherwise "p/q".
std::string rat_str(const Rat& x);

// Accepts "p" or "p/q" with an optional leading sign; throws ParseError.
Rat parse_rat(const std::string& s);

bool is_integer(const Rat& x);
// x in {0, 1, 2, ...}
bool is_nonneg_int(const Rat& x);
// Requires is_integer and long range.
long to_long(const Rat& x);

// Largest integer <= x, as a rational.
Rat rat_floor(const Rat& x);

// Generalized binomial coefficient p(p-1)...(p-n+1)/n!, any rational p, n >= 0.
Rat binom(const Rat& p, long n);

long factorial(long n);
// C(n, k) for machine integers, exact via Rat internally.
long choose(long n, long k);

}  // namespace yang
