#include "k3lab/poly.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>

namespace k3lab {

VarsPtr intern_vars(const VarList& names) {
  static std::mutex mu;
  static std::map<VarList, VarsPtr> table;
  if (names.size() > std::size_t(Monomial::kMaxVars))
    throw std::invalid_argument("too many polynomial variables");
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j]) throw std::invalid_argument("duplicate variable " + names[i]);
  std::lock_guard<std::mutex> lock(mu);
  auto it = table.find(names);
  if (it != table.end()) return it->second;
  auto p = std::make_shared<const VarList>(names);
  table.emplace(names, p);
  return p;
}

Poly::Poly() : vars_(intern_vars({})) {}
Poly::Poly(const VarList& vars) : vars_(intern_vars(vars)) {}
Poly::Poly(VarsPtr vars, Rational c) : vars_(std::move(vars)) {
  if (c != 0) terms_.emplace_back(Monomial(), std::move(c));
}
Poly::Poly(VarsPtr vars, Terms terms) : vars_(std::move(vars)), terms_(std::move(terms)) { normalize(); }

Poly Poly::variable(const VarList& vars, const std::string& name, unsigned e) {
  Poly p(vars);
  int i = p.var_index(name);
  if (i < 0) throw std::invalid_argument("unknown variable " + name);
  p.terms_.emplace_back(Monomial::var(i, e), Rational(1));
  return p;
}

Poly Poly::monomial(VarsPtr vars, Monomial m, Rational c) {
  Poly p;
  p.vars_ = std::move(vars);
  if (c != 0) p.terms_.emplace_back(m, std::move(c));
  return p;
}

int Poly::var_index(const std::string& name) const {
  for (int i = 0; i < nvars(); ++i)
    if ((*vars_)[i] == name) return i;
  return -1;
}

void Poly::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first > b.first; });
  Terms out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.second == 0; }), out.end());
  terms_ = std::move(out);
}

Rational Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().first.is_one()) return terms_.back().second;
  return 0;
}

Rational Poly::coeff(Monomial m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, Monomial k) { return t.first > k; });
  if (it != terms_.end() && it->first == m) return it->second;
  return 0;
}

unsigned Poly::degree(int var) const {
  if (var < 0) return 0;
  unsigned d = 0;
  for (auto& t : terms_) d = std::max(d, t.first[var]);
  return d;
}

unsigned Poly::degree(const std::string& name) const { return degree(var_index(name)); }

unsigned Poly::low_degree(int var) const {
  if (terms_.empty() || var < 0) return 0;
  unsigned d = Monomial::kMaxExp;
  for (auto& t : terms_) d = std::min(d, t.first[var]);
  return d;
}

unsigned Poly::total_degree() const {
  unsigned d = 0;
  for (auto& t : terms_) d = std::max(d, t.first.total_degree());
  return d;
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return Monomial();
  Monomial g = terms_.front().first;
  for (auto& t : terms_) g = Monomial::gcd(g, t.first);
  return g;
}

VarsPtr merge_vars(const VarsPtr& a, const VarsPtr& b) {
  if (a == b) return a;
  VarList out = *a;
  for (auto& n : *b)
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  return intern_vars(out);
}

Poly Poly::to_vars(const VarsPtr& target) const {
  if (target == vars_) return *this;
  std::vector<int> map(nvars(), -1);
  for (int i = 0; i < nvars(); ++i)
    for (int j = 0; j < int(target->size()); ++j)
      if ((*target)[j] == (*vars_)[i]) map[i] = j;
  Terms out;
  out.reserve(terms_.size());
  for (auto& [m, c] : terms_) {
    Monomial r;
    for (int i = 0; i < nvars(); ++i) {
      if (m[i] == 0) continue;
      if (map[i] < 0) throw std::invalid_argument("variable " + (*vars_)[i] + " missing from target list");
      r = r.with(map[i], m[i]);
    }
    out.emplace_back(r, c);
  }
  return Poly(target, std::move(out));
}

std::pair<Poly, Poly> unify(const Poly& a, const Poly& b) {
  if (a.vars_ptr() == b.vars_ptr()) return {a, b};
  VarsPtr v = merge_vars(a.vars_ptr(), b.vars_ptr());
  return {a.to_vars(v), b.to_vars(v)};
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

static Poly::Terms merge_terms(const Poly::Terms& a, const Poly::Terms& b, bool subtract) {
  Poly::Terms out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first > b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first > a[i].first) {
      out.emplace_back(b[j].first, subtract ? Rational(-b[j].second) : b[j].second);
      ++j;
    } else {
      Rational c = subtract ? Rational(a[i].second - b[j].second) : Rational(a[i].second + b[j].second);
      if (c != 0) out.emplace_back(a[i].first, std::move(c));
      ++i, ++j;
    }
  }
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.is_zero()) return *this;
  if (vars_ != o.vars_) {
    auto [x, y] = unify(*this, o);
    *this = x;
    terms_ = merge_terms(terms_, y.terms_, false);
    return *this;
  }
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.is_zero()) return *this;
  if (vars_ != o.vars_) {
    auto [x, y] = unify(*this, o);
    *this = x;
    terms_ = merge_terms(terms_, y.terms_, true);
    return *this;
  }
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

Poly operator*(const Poly& a0, const Poly& b0) {
  if (a0.vars_ptr() != b0.vars_ptr()) {
    auto [a, b] = unify(a0, b0);
    return a * b;
  }
  const Poly& a = a0;
  const Poly& b = b0;
  if (a.is_zero() || b.is_zero()) return Poly(a.vars_ptr(), Rational(0));
  Poly::Terms out;
  if (a.size() == 1 || b.size() == 1) {
    const Poly& s = a.size() == 1 ? a : b;
    const Poly& l = a.size() == 1 ? b : a;
    out.reserve(l.size());
    for (auto& t : l.terms()) out.emplace_back(t.first * s.terms()[0].first, t.second * s.terms()[0].second);
    return Poly(a.vars_ptr(), std::move(out));
  }
  std::map<Monomial, Rational, std::greater<Monomial>> acc;
  Rational tmp;
  for (auto& [ma, ca] : a.terms())
    for (auto& [mb, cb] : b.terms()) {
      tmp = ca * cb;
      auto [it, fresh] = acc.try_emplace(ma * mb, tmp);
      if (!fresh) it->second += tmp;
    }
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) out.emplace_back(m, c);
  return Poly(a.vars_ptr(), std::move(out));
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.vars_ptr() == b.vars_ptr()) return a.terms() == b.terms();
  auto [x, y] = unify(a, b);
  return x.terms() == y.terms();
}

Poly Poly::pow(unsigned e) const {
  Poly result(vars_, Rational(1));
  Poly base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Poly Poly::derivative(int var) const {
  Terms out;
  if (var < 0) return Poly(vars_, Rational(0));
  for (auto& [m, c] : terms_) {
    unsigned e = m[var];
    if (e == 0) continue;
    out.emplace_back(m.with(var, e - 1), c * e);
  }
  return Poly(vars_, std::move(out));
}

Poly Poly::derivative(const std::string& name) const { return derivative(var_index(name)); }

Poly Poly::shift_monomial(Monomial s) const {
  Poly r = *this;
  for (auto& t : r.terms_) t.first = t.first * s;
  return r;
}

Poly Poly::divide_monomial(Monomial s) const {
  Poly r = *this;
  for (auto& t : r.terms_) {
    if (!s.divides(t.first)) throw std::domain_error("monomial does not divide");
    t.first = t.first / s;
  }
  return r;
}

std::vector<Poly> Poly::coefficients(int var) const {
  std::vector<Terms> parts(degree(var) + 1);
  for (auto& [m, c] : terms_) parts[var < 0 ? 0 : m[var]].emplace_back(var < 0 ? m : m.with(var, 0), c);
  std::vector<Poly> out;
  out.reserve(parts.size());
  for (auto& p : parts) out.emplace_back(vars_, std::move(p));
  return out;
}

Poly Poly::leading_coeff_in(int var) const { return coefficients(var).back(); }

Poly Poly::substitute(const std::map<std::string, Poly>& values) const {
  VarList keep;
  for (auto& n : *vars_)
    if (!values.count(n)) keep.push_back(n);
  VarsPtr target = intern_vars(keep);
  for (auto& [n, v] : values) target = merge_vars(target, v.vars_ptr());
  std::vector<const Poly*> repl(nvars(), nullptr);
  std::vector<Poly> converted;
  converted.reserve(values.size());
  for (int i = 0; i < nvars(); ++i) {
    auto it = values.find((*vars_)[i]);
    if (it != values.end()) {
      converted.push_back(it->second.to_vars(target));
      repl[i] = &converted.back();
    }
  }
  std::vector<std::map<unsigned, Poly>> cache(nvars());
  auto power = [&](int i, unsigned e) -> const Poly& {
    auto it = cache[i].find(e);
    if (it != cache[i].end()) return it->second;
    return cache[i].emplace(e, repl[i]->pow(e)).first->second;
  };
  std::map<Monomial, Rational, std::greater<Monomial>> acc;
  for (auto& [m, c] : terms_) {
    Monomial base;
    Poly factor(target, c);
    for (int i = 0; i < nvars(); ++i) {
      if (m[i] == 0) continue;
      if (repl[i]) {
        factor *= power(i, m[i]);
      } else {
        int j = 0;
        while ((*target)[j] != (*vars_)[i]) ++j;
        base = base.with(j, m[i]);
      }
    }
    for (auto& [fm, fc] : factor.terms()) acc[fm * base] += fc;
  }
  Terms out;
  for (auto& [m, c] : acc)
    if (c != 0) out.emplace_back(m, c);
  return Poly(target, std::move(out));
}

Poly Poly::evaluate(int var, const Rational& value) const {
  if (var < 0) return *this;
  std::vector<Rational> pw{Rational(1)};
  Terms out;
  out.reserve(terms_.size());
  for (auto& [m, c] : terms_) {
    unsigned e = m[var];
    while (pw.size() <= e) pw.push_back(pw.back() * value);
    out.emplace_back(m.with(var, 0), c * pw[e]);
  }
  return Poly(vars_, std::move(out));
}

Rational Poly::evaluate(const std::vector<Rational>& point) const {
  if (int(point.size()) < nvars()) throw std::invalid_argument("evaluation point too short");
  Rational s = 0;
  for (auto& [m, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < nvars(); ++i) {
      Rational p;
      mpz_pow_ui(p.get_num_mpz_t(), point[i].get_num_mpz_t(), m[i]);
      mpz_pow_ui(p.get_den_mpz_t(), point[i].get_den_mpz_t(), m[i]);
      t *= p;
    }
    s += t;
  }
  return s;
}

std::complex<double> Poly::evaluate(const std::vector<std::complex<double>>& point) const {
  std::complex<double> s = 0;
  for (auto& [m, c] : terms_) {
    std::complex<double> t = c.get_d();
    for (int i = 0; i < nvars(); ++i)
      if (m[i]) t *= std::pow(point[i], int(m[i]));
    s += t;
  }
  return s;
}

Poly Poly::reverse(int var, unsigned d) const {
  Terms out;
  for (auto& [m, c] : terms_) {
    if (m[var] > d) throw std::domain_error("degree exceeds reversal bound");
    out.emplace_back(m.with(var, d - m[var]), c);
  }
  return Poly(vars_, std::move(out));
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : terms_) {
    Rational a = abs(c);
    bool neg = c < 0;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool unit = (a == 1);
    if (!unit || m.is_one()) os << to_string(a);
    bool need_star = !unit;
    for (int i = 0; i < nvars(); ++i) {
      if (!m[i]) continue;
      if (need_star) os << "*";
      os << (*vars_)[i];
      if (m[i] > 1) os << "^" << m[i];
      need_star = true;
    }
  }
  return os.str();
}

}  // namespace k3lab
