#include "k3lab/rational.hpp"

#include <cctype>

namespace k3lab {

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

static Integer parse_integer(std::string_view s, std::string_view whole) {
  std::string t(s);
  std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
  if (i == t.size()) throw ParseError("malformed rational: '" + std::string(whole) + "'");
  for (std::size_t k = i; k < t.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(t[k])))
      throw ParseError("malformed rational: '" + std::string(whole) + "'");
  if (t[0] == '+') t.erase(0, 1);
  return Integer(t);
}

Rational parse_rational(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s, s));
  Integer num = parse_integer(s.substr(0, slash), s);
  std::string_view d = s.substr(slash + 1);
  if (!d.empty() && (d[0] == '-' || d[0] == '+')) throw ParseError("malformed rational: '" + std::string(s) + "'");
  Integer den = parse_integer(d, s);
  if (den == 0) throw ParseError("zero denominator: '" + std::string(s) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace k3lab
