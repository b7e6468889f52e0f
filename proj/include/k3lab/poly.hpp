#pragma once
// Sparse multivariate polynomials over Q in at most four named variables.
// Terms are kept sorted by descending lex order with no zero coefficients.
#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3lab/monomial.hpp"
#include "k3lab/rational.hpp"

namespace k3lab {

using VarList = std::vector<std::string>;
using VarsPtr = std::shared_ptr<const VarList>;

// Interned variable lists: equal lists share one pointer.
VarsPtr intern_vars(const VarList& names);

class Poly {
 public:
  using Term = std::pair<Monomial, Rational>;
  using Terms = std::vector<Term>;

  Poly();
  explicit Poly(const VarList& vars);
  Poly(VarsPtr vars, Rational c);
  Poly(const VarList& vars, Rational c) : Poly(intern_vars(vars), std::move(c)) {}
  Poly(VarsPtr vars, Terms terms);  // normalizes

  static Poly variable(const VarList& vars, const std::string& name, unsigned e = 1);
  static Poly monomial(VarsPtr vars, Monomial m, Rational c);

  const VarList& vars() const { return *vars_; }
  const VarsPtr& vars_ptr() const { return vars_; }
  int nvars() const { return int(vars_->size()); }
  int var_index(const std::string& name) const;  // -1 when absent
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }
  Rational constant_term() const;
  const Rational& leading_coeff() const { return terms_.front().second; }
  Monomial leading_monomial() const { return terms_.front().first; }
  unsigned degree(int var) const;
  unsigned degree(const std::string& name) const;
  unsigned low_degree(int var) const;  // smallest exponent over terms
  unsigned total_degree() const;
  bool uses(int var) const { return degree(var) > 0; }
  Monomial monomial_content() const;  // gcd of all monomials
  Rational coeff(Monomial m) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(unsigned e) const;
  Poly derivative(int var) const;
  Poly derivative(const std::string& name) const;
  Poly shift_monomial(Monomial m) const;          // multiply by m
  Poly divide_monomial(Monomial m) const;         // requires m | every term

  // Coefficients of var^0, var^1, ... (each free of var, same variable list).
  std::vector<Poly> coefficients(int var) const;
  Poly leading_coeff_in(int var) const;

  // Replace variables by polynomials (possibly in other variable lists).
  Poly substitute(const std::map<std::string, Poly>& values) const;
  Poly evaluate(int var, const Rational& value) const;
  Rational evaluate(const std::vector<Rational>& point) const;
  std::complex<double> evaluate(const std::vector<std::complex<double>>& point) const;

  // Rewrite over another variable list that contains every used variable.
  Poly to_vars(const VarsPtr& target) const;
  Poly to_vars(const VarList& target) const { return to_vars(intern_vars(target)); }

  // Reverse a univariate-in-var polynomial: x^d p(1/x).
  Poly reverse(int var, unsigned d) const;

  std::string str() const;

 private:
  void normalize();
  VarsPtr vars_;
  Terms terms_;
};

// Bring two polynomials to a common variable list.
std::pair<Poly, Poly> unify(const Poly& a, const Poly& b);
VarsPtr merge_vars(const VarsPtr& a, const VarsPtr& b);

// q with a == q*b, if it exists.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

// Rational content c (positive) with p == c * primitive, where primitive has
// coprime integer coefficients and a positive leading coefficient.
Rational content(const Poly& p);
Poly primitive_part(const Poly& p);

// Greatest common divisor: primitive, positive leading coefficient; gcd(0,0)=0.
Poly gcd(const Poly& a, const Poly& b);

// Square-free decomposition: p = c * prod f_i^i (f_i primitive, pairwise coprime).
// Entry i-1 holds f_i (possibly 1). Needs a single used variable or the given one.
std::vector<Poly> squarefree_decomposition(const Poly& p, int var);

// Multiplicity of f in p (f non-constant).
unsigned multiplicity(const Poly& p, const Poly& f);

}  // namespace k3lab
