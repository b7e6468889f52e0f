#include <doctest.h>

#include <random>

#include "k3lab/biseries.hpp"
#include "k3lab/linalg.hpp"
#include "k3lab/parse.hpp"

using namespace k3lab;

namespace {
const VarList LM{"lambda", "mu"};
Poly P(const char* s, const VarList& v = LM) { return parse_poly(s, v); }

Poly random_poly(std::mt19937& rng, const VarList& vars, int deg, int terms) {
  std::uniform_int_distribution<int> e(0, deg), c(-9, 9);
  Poly p(vars);
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    for (int i = 0; i < int(vars.size()); ++i) m = m.with(i, unsigned(e(rng)));
    p += Poly::monomial(intern_vars(vars), m, Rational(c(rng)));
  }
  return p;
}

// Cofactor expansion: an independent determinant.
Integer leibniz(const IntMatrix& m) {
  if (m.rows() == 1) return m(0, 0);
  Integer s = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    IntMatrix minor(m.rows() - 1, m.cols() - 1);
    for (Eigen::Index r = 1; r < m.rows(); ++r)
      for (Eigen::Index c = 0, k = 0; c < m.cols(); ++c)
        if (c != j) minor(r - 1, k++) = m(r, c);
    Integer t = m(0, j) * leibniz(minor);
    s += (j % 2 ? -t : t);
  }
  return s;
}
}  // namespace

TEST_CASE("rational formatting and parsing") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-10/5")) == "-2");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
  CHECK(factorial(5) == 120);
}

TEST_CASE("polynomial arithmetic") {
  Poly a = P("(lambda+1)^2"), b = P("lambda^2 + 2*lambda + 1");
  CHECK(a == b);
  CHECK((a - b).is_zero());
  CHECK(P("lambda*mu").degree("mu") == 1);
  CHECK(P("3*lambda^2*mu - mu").derivative("lambda") == P("6*lambda*mu"));
  CHECK(P("lambda^3 + mu").str() == "lambda^3 + mu");
  auto q = divide_exact(P("lambda^2 - mu^2"), P("lambda - mu"));
  REQUIRE(q);
  CHECK(*q == P("lambda + mu"));
  CHECK(!divide_exact(P("lambda^2 + 1"), P("lambda - 1")));
  // substitution across variable lists
  Poly s = P("lambda + mu").substitute({{"lambda", parse_poly("x^2", {"x"})}});
  CHECK(s == parse_poly("x^2 + mu", {"mu", "x"}));
}

TEST_CASE("gcd on structured inputs") {
  Poly t = P("lambda^2*(4*lambda-1)^3 - 2*(2+25*lambda*(20*lambda-1))*mu - 3125*mu^2");
  Poly s = P("1 - 15*lambda - 100*lambda^2");
  Poly g = gcd(t * s * P("lambda"), s * P("mu*lambda^2"));
  CHECK(g == primitive_part(s * P("lambda")));
  CHECK(gcd(P("lambda+1"), P("mu+1")) == P("1"));
  CHECK(gcd(P("0"), P("2*lambda+4")) == P("lambda+2"));
}

TEST_CASE("gcd property: common factor recovered") {
  std::mt19937 rng(7);
  for (int it = 0; it < 25; ++it) {
    VarList vars = it % 3 == 0 ? VarList{"x", "y", "z"} : LM;
    Poly f = random_poly(rng, vars, 3, 4);
    Poly g = random_poly(rng, vars, 3, 4);
    Poly h = random_poly(rng, vars, 3, 4);
    if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
    Poly d = gcd(f * g, f * h);
    CHECK(divide_exact(d, primitive_part(f)).has_value());
    CHECK(divide_exact(f * g, d).has_value());
    CHECK(divide_exact(f * h, d).has_value());
    // cofactors are coprime
    Poly cg = *divide_exact(f * g, d), ch = *divide_exact(f * h, d);
    CHECK(gcd(cg, ch).is_constant());
  }
}

TEST_CASE("rational function normal form") {
  RF a = parse_rf("(lambda^2-1)/(2*lambda-2)", LM);
  CHECK(a == parse_rf("(lambda+1)/2", LM));
  CHECK(a.den() == P("1"));
  RF b = parse_rf("1/lambda + 1/mu", LM);
  CHECK(b == parse_rf("(lambda+mu)/(lambda*mu)", LM));
  CHECK((b - b).is_zero());
  RF c = parse_rf("mu/(lambda-mu)", LM);
  CHECK(c.derivative("lambda") == parse_rf("-mu/(lambda-mu)^2", LM));
  CHECK(c.theta("mu") == parse_rf("lambda*mu/(lambda-mu)^2", LM));
  RF sub = c.substitute({{"lambda", parse_rf("1/x", {"x", "mu"})}});
  CHECK(sub == parse_rf("mu*x/(1-mu*x)", {"x", "mu"}));
  CHECK_THROWS(parse_rf("1/(lambda-lambda)", LM));
}

TEST_CASE("rational function field axioms on random samples") {
  std::mt19937 rng(11);
  for (int it = 0; it < 10; ++it) {
    Poly p1 = random_poly(rng, LM, 2, 3), p2 = random_poly(rng, LM, 2, 3), p3 = random_poly(rng, LM, 2, 3);
    if (p2.is_zero() || p3.is_zero()) continue;
    RF x(p1, p2), y(p3, p2 + P("1")), z(p2, p3);
    if ((p2 + P("1")).is_zero()) continue;
    CHECK((x + y) * z == x * z + y * z);
    CHECK((x * y) * z == x * (y * z));
    if (!y.is_zero()) CHECK((x / y) * y == x);
  }
}

TEST_CASE("Bareiss determinant matches cofactor expansion") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int n = 1; n <= 6; ++n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = d(rng);
    CHECK(det(m) == leibniz(m));
  }
  IntMatrix sing(3, 3);
  sing << 1, 2, 3, 2, 4, 6, 0, 1, 1;
  CHECK(det(sing) == 0);
}

TEST_CASE("polynomial determinant") {
  Matrix<Poly> m(2, 2);
  m << P("lambda"), P("mu"), P("1"), P("lambda");
  CHECK(det(m) == P("lambda^2 - mu"));
}

TEST_CASE("linear solve over Q and over rational functions") {
  QMatrix a(2, 3);
  a << 1, 2, 3, 2, 4, 7;
  QMatrix b(2, 1);
  b << 1, 2;
  auto s = solve_linear(a, b);
  REQUIRE(s.consistent);
  CHECK(mul<Rational>(a, s.particular) == b);
  REQUIRE(s.kernel.cols() == 1);
  CHECK(mul<Rational>(a, s.kernel).isZero());
  QMatrix bad(2, 1);
  bad << 1, 3;
  QMatrix a2(2, 2);
  a2 << 1, 2, 2, 4;
  CHECK(!solve_linear(a2, bad).consistent);

  RFMatrix r(2, 2);
  r << parse_rf("lambda", LM), parse_rf("1", LM), parse_rf("mu", LM), parse_rf("lambda", LM);
  RFMatrix rhs(2, 1);
  rhs << parse_rf("1", LM), parse_rf("0", LM);
  auto t = solve_linear(r, rhs);
  REQUIRE(t.consistent);
  CHECK(t.particular(0, 0) == parse_rf("lambda/(lambda^2-mu)", LM));
  RFMatrix inv = inverse(r);
  RFMatrix id = mul<RF>(r, inv);
  CHECK(id(0, 0) == parse_rf("1", LM));
  CHECK(id(1, 0).is_zero());
}

TEST_CASE("bivariate series arithmetic") {
  BiSeries a(4), b(4);
  a.at(0, 0) = 1;
  a.at(1, 0) = 1;  // 1 + lambda
  b.at(0, 0) = 1;
  b.at(1, 0) = -1;  // 1 - lambda
  BiSeries c = a * b;
  CHECK(c(0, 0) == 1);
  CHECK(c(2, 0) == -1);
  CHECK(c(1, 0) == 0);
  CHECK_THROWS(c(5, 0));
  BiSeries z = c - c;
  CHECK(z.zero_through(4));
}
