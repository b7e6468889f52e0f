#pragma once
// Exact scalars. GMP does the bignum work.
#include <gmpxx.h>
#include <string>
#include <string_view>
#include <stdexcept>

namespace k3lab {

using Integer = mpz_class;
using Rational = mpq_class;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "p/q" or "p" (denominator omitted when 1).
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// Accepts "p", "-p", "p/q"; rejects zero denominators.
Rational parse_rational(std::string_view s);

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer factorial(unsigned long n);
Integer binomial(unsigned long n, unsigned long k);

}  // namespace k3lab
