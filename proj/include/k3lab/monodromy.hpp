#pragma once
// Arithmetic of PO(A, Z) for the first family and numerical monodromy of the
// Pfaffian systems.
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "k3lab/lattices.hpp"
#include "k3lab/pfaffian.hpp"

namespace k3lab {

using Complex = std::complex<double>;
using CMatrix4 = Eigen::Matrix4cd;
using CVector4 = Eigen::Vector4cd;

struct NamedElement {
  std::string name;
  IntMatrix g;
};

GramMatrix form_a0();  // U + (2 1 / 1 -2)
// G1, G2, G3 (orientation preserving), H1, H2.
const std::vector<NamedElement>& po_generators();

bool is_isometry(const IntMatrix& g, const GramMatrix& a);

// (z1, z2) with xi proportional to (z1 z2, -1, W^-t (z1, z2)); xi must lie on
// the period domain of A0.
std::pair<Complex, Complex> half_plane_coords(const CVector4& xi);
// True iff g maps the component through (1 : 1 : -i : 0) to itself.
// Throws invalid_argument unless g is an isometry of A0.
bool component_test(const IntMatrix& g);

// Paths in (lambda, mu)-space: straight segments and arcs in one coordinate.
struct Segment {
  enum class Kind { Line, Arc } kind = Kind::Line;
  Complex lambda0, mu0;  // line start, or fixed point of an arc
  Complex lambda1, mu1;  // line end
  int coordinate = 0;    // arc: 0 moves lambda, 1 moves mu
  Complex center;
  double radius = 0, angle0 = 0, sweep = 0;

  std::pair<Complex, Complex> point(double s) const;
  std::pair<Complex, Complex> velocity(double s) const;
};

struct Loop {
  Complex lambda, mu;  // base point
  std::vector<Segment> segments;

  bool closed(double eps = 1e-12) const;
};

// Counter-clockwise circle in one coordinate, starting at center + radius.
Loop circle_loop(int coordinate, Complex lambda, Complex mu, double radius);
// Circle in the mu-plane around the root of the non-coordinate singular
// factors (at fixed lambda) nearest to mu_guess.
Loop discriminant_loop(int family, Complex lambda, Complex mu_guess, double radius);
// a followed by b (common base point).
Loop concat(const Loop& a, const Loop& b);
// The reverse of a.
Loop reversed(const Loop& a);
// Straight path from (lambda, mu) to the base of c, c, and back.
Loop lasso(Complex lambda, Complex mu, const Loop& c);

struct TransportResult {
  CMatrix4 M;
  double error = 0;  // accumulated step-doubling estimate
  int steps = 0;
};

// Fundamental solution of dY = (alpha/lambda dlambda + beta/mu dmu) Y along
// the loop with Y = I at the base point. Fixed-policy adaptive RK4 with step
// doubling. Throws invalid_argument for an open loop or one touching a pole,
// runtime_error on step underflow.
TransportResult transport(const PfaffianSystem& p, const Loop& loop, double tol);

// Sampled minimum over the loop of |f| / max |coefficient of f|, f running
// over the coprime factors of the denominators of alpha and beta.
double pole_clearance(const PfaffianSystem& p, const Loop& loop, int samples = 400);

// det(x - M) = x^4 + c[3] x^3 + ... + c[0], returned as c[0..4] with c[4] = 1.
std::vector<Complex> char_poly(const CMatrix4& m);

// Quasi-unipotence is decided on the rounded characteristic polynomial: it
// must be a product of cyclotomic polynomials. Eigenvalues of a Jordan block
// of size k are only accurate to about tol^(1/k), so the modulus residual is
// reported but not used.
struct LocalReport {
  std::vector<Complex> eigenvalues;
  std::vector<Complex> char_poly;
  std::vector<long> rounded_char_poly;
  double integrality_residual = 0;  // max distance of char-poly coefficients to Z
  double modulus_residual = 0;      // max | |e| - 1 |
  bool cyclotomic = false;
  bool quasi_unipotent = false;
};
LocalReport analyse(const CMatrix4& m, double tol);

// Columns v, g1 v, g2 v, g1 g1 v, ... chosen greedily until independent,
// where v spans the (-1)-eigenspace of the reflection. Empty if the orbit
// does not span.
std::optional<CMatrix4> root_orbit_basis(const CMatrix4& reflection, const std::vector<CMatrix4>& gens, int depth = 3);

struct IntegralityReport {
  CMatrix4 conjugated;
  IntMatrix rounded;
  double residual = 0;
  bool integral = false;
  bool isometry = false;
};
// B^-1 M B rounded to integers and tested against the form a.
IntegralityReport integrality_check(const CMatrix4& m, const CMatrix4& b, const GramMatrix& a, double tol);

}  // namespace k3lab
