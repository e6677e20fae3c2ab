#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace apolar {

/// Exact rational number; GMP keeps it in lowest terms with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// p/q in lowest terms; mpq_class(p, q) alone leaves the fraction unreduced.
inline Rational ratio(long p, long q) {
  if (q == 0) throw std::invalid_argument("zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  for (char c : s) {
    if (!(c == '-' || c == '+' || c == '/' || (c >= '0' && c <= '9')))
      throw std::invalid_argument("malformed rational literal: " + s);
  }
  if (s.front() == '+') s.erase(s.begin());
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

inline Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// Bit size of numerator plus denominator; used to pick cheap pivots.
inline std::size_t height_bits(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

inline std::uint64_t count_binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace apolar
