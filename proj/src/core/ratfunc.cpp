#include "k3lab/ratfunc.hpp"

namespace k3lab {

namespace {
bool is_one(const Poly& p) { return p.is_constant() && !p.is_zero() && p.leading_coeff() == 1; }
}  // namespace

RationalFunction::RationalFunction(Poly p) : num_(std::move(p)), den_(num_.vars_ptr(), Rational(1)) {}

RationalFunction::RationalFunction(Poly num, Poly den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  auto [n, d] = unify(num, den);
  num_ = std::move(n);
  den_ = std::move(d);
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(num_.vars_ptr(), Rational(1));
    return;
  }
  if (!den_.is_constant()) {
    Poly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *divide_exact(num_, g);
      den_ = *divide_exact(den_, g);
    }
  }
  Rational lc = den_.leading_coeff();
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

Rational RationalFunction::constant_value() const {
  if (!is_constant()) throw std::logic_error("rational function is not constant");
  return num_.constant_term() / den_.constant_term();
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (is_one(den_) && is_one(o.den_)) {
    num_ += o.num_;
    den_ = Poly(num_.vars_ptr(), Rational(1));
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
    auto [n, d] = unify(num_, den_);
    num_ = n;
    den_ = d;
    normalize();
    return *this;
  }
  Poly g = gcd(den_, o.den_);
  Poly b1 = *divide_exact(den_, g);
  Poly d1 = *divide_exact(o.den_, g);
  Poly n = num_ * d1 + o.num_ * b1;
  Poly h = gcd(n, g);
  if (n.is_zero()) {
    *this = RationalFunction(Poly(n.vars_ptr(), Rational(0)));
    return *this;
  }
  num_ = *divide_exact(n, h);
  den_ = b1 * d1 * *divide_exact(g, h);
  auto [x, y] = unify(num_, den_);
  num_ = x;
  den_ = y;
  Rational lc = den_.leading_coeff();
  if (lc != 1) {
    num_ *= Rational(1 / lc);
    den_ *= Rational(1 / lc);
  }
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = o.to_vars(merge_vars(vars_ptr(), o.vars_ptr()));
  if (is_one(den_) && is_one(o.den_)) {
    num_ *= o.num_;
    den_ = Poly(num_.vars_ptr(), Rational(1));
    return *this;
  }
  Poly g1 = gcd(num_, o.den_);
  Poly g2 = gcd(o.num_, den_);
  Poly n = *divide_exact(num_, g1) * *divide_exact(o.num_, g2);
  Poly d = *divide_exact(den_, g2) * *divide_exact(o.den_, g1);
  auto [x, y] = unify(n, d);
  num_ = x;
  den_ = y;
  Rational lc = den_.leading_coeff();
  if (lc != 1) {
    num_ *= Rational(1 / lc);
    den_ *= Rational(1 / lc);
  }
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational function");
  RationalFunction inv;
  inv.num_ = o.den_;
  inv.den_ = o.num_;
  Rational lc = inv.den_.leading_coeff();
  inv.num_ *= Rational(1 / lc);
  inv.den_ *= Rational(1 / lc);
  return *this *= inv;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
  return a.num_ == b.num_ && a.den_ == b.den_;
}

RationalFunction RationalFunction::pow(int e) const {
  if (e < 0) return RationalFunction(Poly(vars_ptr(), Rational(1))) / pow(-e);
  RationalFunction r;
  r.num_ = num_.pow(unsigned(e));
  r.den_ = den_.pow(unsigned(e));
  return r;
}

RationalFunction RationalFunction::derivative(const std::string& var) const {
  int i = num_.var_index(var);
  if (i < 0) return RationalFunction(Poly(vars_ptr(), Rational(0)));
  if (den_.is_constant()) {
    RationalFunction r = *this;
    r.num_ = num_.derivative(i);
    return r;
  }
  // (n'd - nd')/d^2 reduced via g = gcd(d, d').
  Poly dd = den_.derivative(i);
  Poly g = gcd(den_, dd);
  Poly d1 = *divide_exact(den_, g);
  Poly n = num_.derivative(i) * d1 - num_ * *divide_exact(dd, g);
  return RationalFunction(n, d1 * den_);
}

RationalFunction RationalFunction::theta(const std::string& var) const {
  int i = num_.var_index(var);
  if (i < 0) return RationalFunction(Poly(vars_ptr(), Rational(0)));
  return derivative(var) * RationalFunction(Poly::variable(vars(), var));
}

RationalFunction substitute(const Poly& p, const std::map<std::string, RationalFunction>& values) {
  // Homogenize each substituted variable separately: x -> n/d.
  std::map<std::string, Poly> nums, dens;
  for (auto& [k, v] : values) {
    nums.emplace(k, v.num());
    dens.emplace(k, v.den());
  }
  // Group terms by variables that are substituted: sum c*m_rest * prod n_i^e d_i^(D-e) / prod d_i^D.
  std::map<std::string, unsigned> D;
  for (auto& [k, v] : values) D[k] = p.degree(k);
  VarList keep;
  for (auto& n : p.vars())
    if (!values.count(n)) keep.push_back(n);
  VarsPtr target = intern_vars(keep);
  for (auto& [k, v] : values) target = merge_vars(target, v.vars_ptr());
  std::map<std::string, std::map<unsigned, Poly>> npw, dpw;
  auto power = [&](std::map<std::string, std::map<unsigned, Poly>>& cache, const std::map<std::string, Poly>& base,
                   const std::string& k, unsigned e) -> const Poly& {
    auto& c = cache[k];
    auto it = c.find(e);
    if (it != c.end()) return it->second;
    return c.emplace(e, base.at(k).to_vars(target).pow(e)).first->second;
  };
  Poly num(target, Rational(0));
  for (auto& [m, c] : p.terms()) {
    Monomial rest;
    Poly term(target, c);
    for (int i = 0; i < p.nvars(); ++i) {
      const std::string& name = p.vars()[i];
      auto it = values.find(name);
      if (it == values.end()) {
        if (m[i]) {
          int j = 0;
          while ((*target)[j] != name) ++j;
          rest = rest.with(j, m[i]);
        }
        continue;
      }
      unsigned e = m[i];
      if (e) term *= power(npw, nums, name, e);
      if (D[name] > e) term *= power(dpw, dens, name, D[name] - e);
    }
    num += term.shift_monomial(rest);
  }
  Poly den(target, Rational(1));
  for (auto& [k, v] : values)
    if (D[k]) den *= power(dpw, dens, k, D[k]);
  return RationalFunction(num, den);
}

RationalFunction RationalFunction::substitute(const std::map<std::string, RationalFunction>& values) const {
  // Common homogenizing factors cancel between numerator and denominator.
  std::map<std::string, RationalFunction> used;
  for (auto& [k, v] : values)
    if (num_.var_index(k) >= 0) used.emplace(k, v);
  if (used.empty()) return *this;
  return k3lab::substitute(num_, used) / k3lab::substitute(den_, used);
}

RationalFunction RationalFunction::to_vars(const VarsPtr& v) const {
  RationalFunction r;
  r.num_ = num_.to_vars(v);
  r.den_ = den_.to_vars(v);
  return r;
}

Rational RationalFunction::evaluate(const std::vector<Rational>& point) const {
  Rational d = den_.evaluate(point);
  if (d == 0) throw std::domain_error("pole of rational function");
  return num_.evaluate(point) / d;
}

std::complex<double> RationalFunction::evaluate(const std::vector<std::complex<double>>& point) const {
  return num_.evaluate(point) / den_.evaluate(point);
}

std::string RationalFunction::str() const {
  if (den_.is_constant() && den_.leading_coeff() == 1) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace k3lab
