#pragma once
// Period power series, theta-operator algebra in (lambda, mu), GKZ systems
// and their two-variable reduction.
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "k3lab/biseries.hpp"
#include "k3lab/poly.hpp"
#include "k3lab/polytopes.hpp"

namespace k3lab {

struct CoeffRule {
  int family = 0;
  Rational operator()(int n, int m) const;
  std::string str() const;
};

CoeffRule coeff_rule(int j);
BiSeries period_series(int j, int N);

// c * lambda^i mu^j theta_lambda^a theta_mu^b, monomials to the left.
class ThetaOperator {
 public:
  struct Key {
    int i = 0, j = 0, a = 0, b = 0;
    auto operator<=>(const Key&) const = default;
  };
  using Terms = std::map<Key, Rational>;

  ThetaOperator() = default;
  explicit ThetaOperator(Rational c);
  static ThetaOperator term(int i, int j, int a, int b, Rational c = Rational(1));
  static ThetaOperator lambda(int e = 1) { return term(e, 0, 0, 0); }
  static ThetaOperator mu(int e = 1) { return term(0, e, 0, 0); }
  static ThetaOperator theta_lambda() { return term(0, 0, 1, 0); }
  static ThetaOperator theta_mu() { return term(0, 0, 0, 1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const Key& k) const;
  int max_shift() const;  // largest i + j
  int theta_order() const;

  ThetaOperator& operator+=(const ThetaOperator& o);
  ThetaOperator& operator-=(const ThetaOperator& o);
  ThetaOperator& operator*=(const Rational& c);
  friend ThetaOperator operator+(ThetaOperator a, const ThetaOperator& b) { return a += b; }
  friend ThetaOperator operator-(ThetaOperator a, const ThetaOperator& b) { return a -= b; }
  friend ThetaOperator operator*(ThetaOperator a, const Rational& c) { return a *= c; }
  friend ThetaOperator operator*(const Rational& c, ThetaOperator a) { return a *= c; }
  friend ThetaOperator operator*(const ThetaOperator& a, const ThetaOperator& b);
  friend bool operator==(const ThetaOperator&, const ThetaOperator&) = default;

  // Variables lambda, mu, tl, tm; read in normal order.
  Poly to_poly() const;
  static ThetaOperator from_poly(const Poly& p);
  std::string str() const;

 private:
  void add(const Key& k, const Rational& c);
  Terms terms_;
};

const VarList& theta_vars();  // {"lambda", "mu", "tl", "tm"}
ThetaOperator parse_theta(const std::string& text);

ThetaOperator compose(const ThetaOperator& a, const ThetaOperator& b);
BiSeries apply(const ThetaOperator& op, const BiSeries& s);
bool annihilates(const ThetaOperator& op, const BiSeries& s);

// Printed operators: which = 1, 2 (GKZ pair) or 3 (second period operator).
ThetaOperator printed_operator(int j, int which);
// Corrected where the printed one fails to annihilate; equal to printed otherwise.
ThetaOperator period_operator(int j, int which);

struct GkzSystem {
  Eigen::MatrixXi A;
  Eigen::VectorXi beta;
  std::vector<Eigen::VectorXi> box;  // kernel vectors u, box d^{u+} - d^{u-}
};

GkzSystem gkz_from_polytope(const GkzData& g);
GkzSystem gkz_system(int j);  // from the family polytope

// lambda = s_l a^ell, mu = s_m a^m with a1 carrying the prefactor 1/a1.
struct TorusParam {
  Eigen::VectorXi ell, m;
  int sign_l = 1, sign_m = 1;
};

// Exponents matched to the factorial pattern of the family's series, signs
// fixed by annihilation.
TorusParam torus_param(int j);

// Affine images of theta_1..theta_k in (tl, tm), solved from the Euler relations.
std::vector<Poly> euler_images(const GkzSystem& sys, const TorusParam& p);
ThetaOperator box_operator(const GkzSystem& sys, const TorusParam& p, const Eigen::VectorXi& u);
std::pair<ThetaOperator, ThetaOperator> reduce_to_theta(const GkzSystem& sys, const TorusParam& p);

// Basis of operators f1 + f2 tl + f3 tm + f4 tl^2 + f5 tl tm + f6 tm^2 with
// deg f_k <= degrees[k] killing s to its valid order.
std::vector<ThetaOperator> find_annihilator(const BiSeries& s, const std::vector<int>& degrees);
bool in_span(const std::vector<ThetaOperator>& basis, const ThetaOperator& op);

// x = 27 lambda, y = 27 mu.
BiSeries appell_f4(const Rational& a, const Rational& b, const Rational& c, const Rational& cp, int N);

}  // namespace k3lab
