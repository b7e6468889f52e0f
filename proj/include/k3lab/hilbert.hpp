#pragma once
// Rank-4 second-order systems in two variables, Klein's icosahedral
// invariants, and the passage from the period equations of the first family
// to the uniformizing equation of the Hilbert modular orbifold for Q(sqrt 5).
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "k3lab/pfaffian.hpp"

namespace k3lab {

// ---- Klein invariants in (z0, z1, z2)

const VarList& klein_vars();

struct KleinInvariants {
  Poly A, B, C, D;  // degrees 2, 6, 10, 15
};
KleinInvariants klein_invariants();
// 144 D^2 and -1728 B^5 + 720 A C B^3 - 80 A^2 C^2 B + 64 A^3 (5 B^2 - A C)^2 + C^3.
std::pair<Poly, Poly> klein_relation_sides();
bool verify_klein_relation();

// ---- second-order systems
//   Z_XX = l Z_XY + a Z_X + b Z_Y + p Z
//   Z_YY = m Z_XY + c Z_X + d Z_Y + q Z

struct SecondOrderSystem {
  VarList vars;  // (X, Y)
  RF l, m, a, b, c, d, p, q;

  std::array<const RF*, 8> coefficients() const { return {&l, &m, &a, &b, &c, &d, &p, &q}; }
  static constexpr std::array<const char*, 8> kNames = {"l", "m", "a", "b", "c", "d", "p", "q"};
};
bool operator==(const SecondOrderSystem& s, const SecondOrderSystem& t);

const VarList& xy_vars();  // {"x", "y"}

// The printed coefficients l0..q0 in (lambda, mu).
SecondOrderSystem period_system();
// The same system computed from a rank-4 Pfaffian system in the frame
// (1, tl, tm, tl^2) by solving for z_ll and z_mm.
SecondOrderSystem second_order_from_pfaffian(const PfaffianSystem& p);
// Printed uniformizing systems in (x, y): with the normalization used for the
// period map, and the one attached to the older normalization factor.
SecondOrderSystem uniformizing_system();
SecondOrderSystem sato_system();

// Rational change of coordinates with its inverse.
struct CoordinateChange {
  VarList from, to;
  RF u, v;  // new coordinates in terms of `from`
  RF x, y;  // old coordinates in terms of `to`
};
CoordinateChange identity_change(const VarList& vars);
// (lambda, mu) -> (x, y) = (25 mu / (2 (lambda - 1/4)^3), -3125 mu^2 / (lambda - 1/4)^5)
CoordinateChange birational_f();
// True iff both compositions are the identity.
bool is_inverse_pair(const CoordinateChange& f);

// Pull a function of the old coordinates over to the new ones.
RF push_forward(const RF& g, const CoordinateChange& f);

// Throws domain_error when the Jacobian vanishes identically.
SecondOrderSystem transform_system(const SecondOrderSystem& s, const CoordinateChange& f);

// Compatibility of Z_XXYY computed both ways, as coefficients on
// (Z, Z_X, Z_Y, Z_XY). All zero iff the system is integrable.
std::array<RF, 4> integrability_conditions(const SecondOrderSystem& s);
bool is_integrable(const SecondOrderSystem& s);

// ---- normalization factors

// Components of d theta where e^(2 theta) = prod f_i^(e_i).
struct LogDifferential {
  RF x, y;
};
using PowerProduct = std::vector<std::pair<Poly, Rational>>;
LogDifferential log_differential(const PowerProduct& factors, const VarList& vars);
bool is_closed(const LogDifferential& t, const VarList& vars);

// e^(2 theta) = x^4 (-36 x^2 + 32 x + y) / (y^(5/2) D'^(3/2))
PowerProduct normalization_factor();
// e^(2 theta) = (-36 x^2 + 32 x + y) / (y^(1/2) D'^(3/2))
PowerProduct sato_normalization_factor();

// (a, b, c, d) for the quadric-surface case. Throws domain_error if lm = 1.
std::array<RF, 4> coeffs_from_normalization(const RF& l, const RF& m, const LogDifferential& theta,
                                           const VarList& vars);

struct PQSolution {
  RF p, q;
  bool unique = false;
};
// p, q making the system integrable, sought as N / (D x y) with D the lcm of
// the denominators of l..d and deg N <= deg(D x y). Throws domain_error when
// no such p, q exist.
PQSolution pq_from_integrability(const VarList& vars, const RF& l, const RF& m, const RF& a, const RF& b,
                                 const RF& c, const RF& d);

// y (1728 x^5 - 720 x^3 y + 80 x y^2 - 64 (5 x^2 - y)^2 - y^3)
Poly branch_locus();

}  // namespace k3lab
