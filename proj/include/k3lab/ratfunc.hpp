#pragma once
// Rational functions num/den over Q, kept reduced with a monic denominator.
#include <map>
#include <string>

#include "k3lab/poly.hpp"

namespace k3lab {

class RationalFunction {
 public:
  RationalFunction() = default;
  RationalFunction(Poly p);  // NOLINT: polynomials embed
  RationalFunction(Poly num, Poly den);
  RationalFunction(VarsPtr vars, Rational c) : RationalFunction(Poly(std::move(vars), std::move(c))) {}

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const VarList& vars() const { return num_.vars(); }
  const VarsPtr& vars_ptr() const { return num_.vars_ptr(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const;  // requires is_constant()

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  RationalFunction pow(int e) const;
  RationalFunction derivative(const std::string& var) const;
  // var * d/dvar
  RationalFunction theta(const std::string& var) const;
  RationalFunction substitute(const std::map<std::string, RationalFunction>& values) const;
  RationalFunction to_vars(const VarsPtr& v) const;
  Rational evaluate(const std::vector<Rational>& point) const;  // throws on a pole
  std::complex<double> evaluate(const std::vector<std::complex<double>>& point) const;

  std::string str() const;

 private:
  void normalize();
  Poly num_{};
  Poly den_{Poly(VarList{}, Rational(1))};
};

using RF = RationalFunction;

// Substitute rational functions into a polynomial.
RationalFunction substitute(const Poly& p, const std::map<std::string, RationalFunction>& values);

}  // namespace k3lab
