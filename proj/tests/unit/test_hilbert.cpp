#include <doctest.h>

#include "k3lab/fibrations.hpp"
#include "k3lab/hilbert.hpp"
#include "k3lab/parse.hpp"

using namespace k3lab;

namespace {

RF xy(const std::string& s) { return parse_rf(s, xy_vars()); }

bool homogeneous(const Poly& p, unsigned d) {
  for (const auto& [m, c] : p.terms())
    if (m.total_degree() != d) return false;
  return true;
}

// One equation of the system, multiplied through and rewritten with theta
// operators, must kill the period series of the first family.
bool kills_periods(const SecondOrderSystem& s, bool second, const BiSeries& eta) {
  const RF& lead = second ? s.m : s.l;
  const RF& cx = second ? s.c : s.a;
  const RF& cy = second ? s.d : s.b;
  const RF& c0 = second ? s.q : s.p;
  RF lam(Poly::variable(base_vars(), "lambda")), mu(Poly::variable(base_vars(), "mu"));
  RF one(intern_vars(base_vars()), Rational(1));
  // z_XX, z_XY, z_X, z_Y, z as (coefficient, theta operator) pairs
  RF sq = second ? mu * mu : lam * lam;
  std::vector<std::pair<RF, ThetaOperator>> terms = {
      {one / sq, second ? parse_theta("tm^2 - tm") : parse_theta("tl^2 - tl")},
      {-lead / (lam * mu), parse_theta("tl*tm")},
      {-cx / lam, parse_theta("tl")},
      {-cy / mu, parse_theta("tm")},
      {-c0, parse_theta("1")},
  };
  Poly l(base_vars(), Rational(1));
  for (auto& [f, op] : terms) {
    Poly d = f.den().to_vars(base_vars());
    l = *divide_exact(l * d, gcd(l, d));
  }
  ThetaOperator total;
  for (auto& [f, op] : terms) {
    RF g = f * RF(l);
    REQUIRE(g.is_polynomial());
    total += ThetaOperator::from_poly(g.num() * (Rational(1) / g.den().constant_term())) * op;
  }
  return annihilates(total, eta);
}

}  // namespace

TEST_CASE("Klein invariants") {
  auto [A, B, C, D] = klein_invariants();
  CHECK(A.evaluate(std::vector<Rational>{1, 0, 0}) == 1);
  CHECK(homogeneous(A, 2));
  CHECK(homogeneous(B, 6));
  CHECK(homogeneous(C, 10));
  CHECK(homogeneous(D, 15));
  CHECK(C.coeff(Monomial::var(1, 10)) == 1);
  // invariant under z1 -> e z1, z2 -> e^-1 z2 with e^5 = 1
  for (const Poly* p : {&A, &B, &C, &D})
    for (const auto& [m, c] : p->terms()) CHECK((int(m[1]) - int(m[2])) % 5 == 0);
  // z1 <-> z2: A, B, C symmetric, D antisymmetric
  std::map<std::string, Poly> swap{{"z1", Poly::variable(klein_vars(), "z2")}, {"z2", Poly::variable(klein_vars(), "z1")}};
  CHECK(A.substitute(swap) == A);
  CHECK(B.substitute(swap) == B);
  CHECK(C.substitute(swap) == C);
  CHECK(D.substitute(swap) == -D);
}

TEST_CASE("Klein relation") {
  CHECK(verify_klein_relation());
  auto [A, B, C, D] = klein_invariants();
  for (std::vector<Rational> pt : {std::vector<Rational>{1, 1, 1}, {0, 1, -1}, {2, -1, 3}, {Rational(1, 2), 5, -2}}) {
    Rational a = A.evaluate(pt), b = B.evaluate(pt), c = C.evaluate(pt), d = D.evaluate(pt);
    Rational t = 5 * b * b - a * c;
    Rational rhs = -1728 * b * b * b * b * b + 720 * a * c * b * b * b - 80 * a * a * c * c * b + 64 * a * a * a * t * t + c * c * c;
    CHECK(144 * d * d == rhs);
  }
  // the relation fails with a perturbed coefficient
  auto [lhs, rhs] = klein_relation_sides();
  CHECK(lhs != rhs + C.pow(3));
}

TEST_CASE("period system") {
  SecondOrderSystem s = period_system();
  CHECK(s.q == parse_rf("-10/(mu*(lambda + 16*lambda^2 - 80*lambda^3 + 125*mu))", base_vars()));
  CHECK(second_order_from_pfaffian(pfaffian_data(0)) == s);
  CHECK(second_order_from_pfaffian(derive_pfaffian(0)) == s);
  CHECK(is_integrable(s));
  BiSeries eta = period_series(0, 14);
  CHECK(kills_periods(s, false, eta));
  CHECK(kills_periods(s, true, eta));
  SecondOrderSystem bad = s;
  bad.p += RF(intern_vars(base_vars()), Rational(1));
  CHECK_FALSE(kills_periods(bad, false, eta));
  CHECK_FALSE(is_integrable(bad));
  CHECK_THROWS_AS(second_order_from_pfaffian(
                      derive_pfaffian(period_operator(0, 1), period_operator(0, 3), 0, alternate_basis())),
                  std::invalid_argument);
}

TEST_CASE("birational map") {
  CoordinateChange f = birational_f();
  CHECK(is_inverse_pair(f));
  CHECK(is_inverse_pair(identity_change(xy_vars())));
  CoordinateChange broken = f;
  broken.y = xy("y^3/(100000*x^5)");
  CHECK_FALSE(is_inverse_pair(broken));
  // first and second derivatives of f written in (x, y)
  const char* want[10] = {"60*x^3/y", "100*x^2", "-100000*x^6/y^3", "-200000*x^5/y^2",
                          "4800*x^5/y^2", "12000*x^4/y", "0", "20000000000*x^10/y^5",
                          "-6000000*x^8/y^4", "-20000000*x^7/y^3"};
  RF got[10] = {f.u.derivative("lambda"), f.v.derivative("lambda"), f.u.derivative("mu"), f.v.derivative("mu"),
                f.u.derivative("lambda").derivative("lambda"), f.v.derivative("lambda").derivative("lambda"),
                f.u.derivative("mu").derivative("mu"), f.v.derivative("mu").derivative("mu"),
                f.u.derivative("lambda").derivative("mu"), f.v.derivative("lambda").derivative("mu")};
  for (int i = 0; i < 10; ++i) {
    CAPTURE(i);
    CHECK(push_forward(got[i], f) == xy(want[i]));
  }
  // the period coefficients written in (x, y)
  SecondOrderSystem s = period_system();
  const std::string w = "(240*x^4 - 88*x^2*y + 8*y^2 - x*y^2)";
  CHECK(push_forward(s.l, f) == xy("-y^2*(4*x^2 - y)*(9*x^2 - y)/(250*x^3*" + w + ")"));
  CHECK(push_forward(s.m, f) == xy("-4000*x^3*(100*x^4 - 40*x^2*y + 3*x^3*y + 4*y^2 - x*y^2)/(y^2*" + w + ")"));
  CHECK(push_forward(s.a, f) == xy("400*x^2*(3*x^2 - y)*(6*x^2 - y)/(y*" + w + ")"));
  CHECK(push_forward(s.b, f) == xy("-y^2*(13*x^2 - 2*y)/(25*x*" + w + ")"));
  CHECK(push_forward(s.c, f) == xy("200000000*x^9*(3*x^2 - y)/(y^4*" + w + ")"));
  CHECK(push_forward(s.d, f) == xy("160000*x^5*(175*x^4 - 65*x^2*y + 6*y^2 - x*y^2)/(y^3*" + w + ")"));
  CHECK(push_forward(s.p, f) == xy("1600*x^4*(6*x^2 - y)/(y*" + w + ")"));
  CHECK(push_forward(s.q, f) == xy("800000000*x^11/(y^4*" + w + ")"));
}

TEST_CASE("coordinate changes of second-order systems") {
  SecondOrderSystem s = period_system();
  CHECK(transform_system(s, identity_change(base_vars())) == s);
  SecondOrderSystem t = transform_system(s, birational_f());
  CHECK(t.l == xy("-20*(4*x^2 + 3*x*y - 4*y)/(36*x^2 - 32*x - y)"));
  CHECK(t == uniformizing_system());
  CHECK(is_integrable(t));
  // a linear change and its inverse
  CoordinateChange g{base_vars(), {"u", "v"}, parse_rf("lambda + 2*mu", base_vars()), parse_rf("3*lambda - mu", base_vars()),
                     parse_rf("(u + 2*v)/7", {"u", "v"}), parse_rf("(3*u - v)/7", {"u", "v"})};
  REQUIRE(is_inverse_pair(g));
  CoordinateChange h{g.to, g.from, g.x, g.y, g.u, g.v};
  SecondOrderSystem there = transform_system(s, g);
  CHECK(is_integrable(there));
  CHECK(transform_system(there, h) == s);
  CoordinateChange flat = g;
  flat.v = parse_rf("2*lambda + 4*mu", base_vars());
  CHECK_THROWS_AS(transform_system(s, flat), std::domain_error);
  CHECK_THROWS_AS(transform_system(uniformizing_system(), g), std::invalid_argument);
}

TEST_CASE("normalization factors") {
  for (bool sato : {false, true}) {
    CAPTURE(sato);
    SecondOrderSystem s = sato ? sato_system() : uniformizing_system();
    CHECK(is_integrable(s));
    LogDifferential th = log_differential(sato ? sato_normalization_factor() : normalization_factor(), xy_vars());
    CHECK(is_closed(th, xy_vars()));
    auto c = coeffs_from_normalization(s.l, s.m, th, xy_vars());
    CHECK(c[0] == s.a);
    CHECK(c[1] == s.b);
    CHECK(c[2] == s.c);
    CHECK(c[3] == s.d);
    PQSolution pq = pq_from_integrability(xy_vars(), s.l, s.m, c[0], c[1], c[2], c[3]);
    CHECK(pq.unique);
    CHECK(pq.p == s.p);
    CHECK(pq.q == s.q);
  }
  // the two factors differ by x^4 / y^2, hence different (a, b, c, d)
  LogDifferential a = log_differential(normalization_factor(), xy_vars());
  LogDifferential b = log_differential(sato_normalization_factor(), xy_vars());
  CHECK(a.x - b.x == xy("2/x"));
  CHECK(a.y - b.y == xy("-1/y"));
  RF zero = xy("0");
  auto z = coeffs_from_normalization(zero, zero, LogDifferential{zero, zero}, xy_vars());
  for (const RF& c : z) CHECK(c.is_zero());
  PQSolution pq = pq_from_integrability(xy_vars(), zero, zero, zero, zero, zero, zero);
  CHECK(pq.p.is_zero());
  CHECK(pq.q.is_zero());
  CHECK_THROWS_AS(coeffs_from_normalization(xy("x"), xy("1/x"), LogDifferential{zero, zero}, xy_vars()),
                  std::domain_error);
}

TEST_CASE("branch locus") {
  Poly d = branch_locus();
  CHECK(d == parse_poly("y*(1728*x^5 - 720*x^3*y + 80*x*y^2 - 64*(5*x^2 - y)^2 - y^3)", xy_vars()));
  Poly yv = Poly::variable(xy_vars(), "y");
  auto rest = divide_exact(d, yv);
  REQUIRE(rest.has_value());
  CHECK(d.evaluate(std::vector<Rational>{3, 0}) == 0);
  // pulled back by f, the non-y factor is a unit times the quintic t
  CoordinateChange f = birational_f();
  RF back = substitute(*rest, {{"x", f.u}, {"y", f.v}});
  Poly t = singular_locus(0)[2].to_vars(base_vars());
  REQUIRE(t.total_degree() == 5);
  Poly num = back.num().to_vars(base_vars());
  CHECK(multiplicity(num, t) == 1);
  auto cof = divide_exact(num, t);
  REQUIRE(cof.has_value());
  CHECK(cof->is_monomial());
  // the den is a power of (lambda - 1/4)
  CHECK(back.den().to_vars(base_vars()).degree("mu") == 0);
}
