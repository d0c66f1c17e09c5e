#include "yang/rational.hpp"

#include <cctype>

namespace yang {

std::string rat_str(const Rat& x) {
  return x.get_str();  // canonical "p" or "p/q"
}

Rat parse_rat(const std::string& s) {
  std::size_t i = 0, n = s.size();
  auto fail = [&] { throw ParseError("bad rational: '" + s + "'"); };
  if (n == 0) fail();
  std::string t;
  if (s[i] == '+' || s[i] == '-') t += s[i++];
  auto digits = [&] {
    std::size_t start = i;
    while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) t += s[i++];
    if (i == start) fail();
  };
  digits();
  if (i < n && s[i] == '/') {
    t += s[i++];
    digits();
  }
  if (i != n) fail();
  Rat r;
  if (r.set_str(t, 10) != 0) fail();
  if (r.get_den() == 0) fail();  // before canonicalize: gcd step divides by den
  r.canonicalize();
  return r;
}

bool is_integer(const Rat& x) { return x.get_den() == 1; }

bool is_nonneg_int(const Rat& x) { return is_integer(x) && x >= 0; }

long to_long(const Rat& x) {
  if (!is_integer(x) || !x.get_num().fits_slong_p())
    throw std::overflow_error("rational is not a machine integer: " + rat_str(x));
  return x.get_num().get_si();
}

Rat rat_floor(const Rat& x) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return Rat(f);
}

Rat binom(const Rat& p, long n) {
  if (n < 0) return 0;
  Rat r = 1;
  for (long k = 0; k < n; ++k) r *= (p - k) / Rat(k + 1);
  return r;
}

long factorial(long n) {
  long r = 1;
  for (long k = 2; k <= n; ++k) r *= k;
  return r;
}

long choose(long n, long k) {
  if (k < 0 || k > n) return 0;
  return to_long(binom(Rat(n), k));
}

}  // namespace yang
