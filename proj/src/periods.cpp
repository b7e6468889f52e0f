#include "k3lab/periods.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "k3lab/lattices.hpp"
#include "k3lab/linalg.hpp"
#include "k3lab/parse.hpp"

namespace k3lab {

// ---- series ----

Rational CoeffRule::operator()(int n, int m) const {
  auto f = [](long k) { return factorial((unsigned long)k); };
  Integer num, den;
  int sign = 1;
  switch (family) {
    case 0:
      num = f(5 * m + 2 * n);
      den = f(n) * f(m) * f(m) * f(m) * f(2 * m + n);
      sign = m % 2 ? -1 : 1;
      break;
    case 1:
      num = f(3 * n + 3 * m);
      den = f(n) * f(n) * f(m) * f(m) * f(n + m);
      sign = (n + m) % 2 ? -1 : 1;
      break;
    case 2:
      num = f(4 * m + 3 * n);
      den = f(m) * f(m) * f(n) * f(m + n) * f(m + n);
      sign = n % 2 ? -1 : 1;
      break;
    case 3:
      num = f(3 * n + 2 * m);
      den = f(n) * f(n) * f(n) * f(m) * f(m);
      sign = n % 2 ? -1 : 1;
      break;
    default:
      throw std::invalid_argument("unknown family");
  }
  Rational r(num, den);
  r.canonicalize();
  return sign < 0 ? Rational(-r) : r;
}

std::string CoeffRule::str() const {
  static const char* text[] = {
      "(-1)^m (5m+2n)!/(n! (m!)^3 (2m+n)!)",
      "(-1)^(m+n) (3n+3m)!/((n!)^2 (m!)^2 (n+m)!)",
      "(-1)^n (4m+3n)!/((m!)^2 n! ((m+n)!)^2)",
      "(-1)^n (3n+2m)!/((n!)^3 (m!)^2)",
  };
  return text[family];
}

CoeffRule coeff_rule(int j) {
  if (j < 0 || j > 3) throw std::invalid_argument("unknown family");
  return CoeffRule{j};
}

BiSeries period_series(int j, int N) {
  CoeffRule c = coeff_rule(j);
  BiSeries s(N);
  for (int d = 0; d <= N; ++d)
    for (int m = 0; m <= d; ++m) s.at(d - m, m) = c(d - m, m);
  return s;
}

// ---- theta operators ----

ThetaOperator::ThetaOperator(Rational c) { add(Key{}, c); }

ThetaOperator ThetaOperator::term(int i, int j, int a, int b, Rational c) {
  if (i < 0 || j < 0 || a < 0 || b < 0) throw std::invalid_argument("negative exponent");
  ThetaOperator t;
  t.add(Key{i, j, a, b}, c);
  return t;
}

void ThetaOperator::add(const Key& k, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational ThetaOperator::coeff(const Key& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Rational(0) : it->second;
}

int ThetaOperator::max_shift() const {
  int s = 0;
  for (const auto& [k, c] : terms_) s = std::max(s, k.i + k.j);
  return s;
}

int ThetaOperator::theta_order() const {
  int s = 0;
  for (const auto& [k, c] : terms_) s = std::max(s, k.a + k.b);
  return s;
}

ThetaOperator& ThetaOperator::operator+=(const ThetaOperator& o) {
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

ThetaOperator& ThetaOperator::operator-=(const ThetaOperator& o) {
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

ThetaOperator& ThetaOperator::operator*=(const Rational& c) {
  if (c == 0) terms_.clear();
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

ThetaOperator compose(const ThetaOperator& x, const ThetaOperator& y) {
  ThetaOperator r;
  for (const auto& [p, c] : x.terms())
    for (const auto& [q, d] : y.terms()) {
      // theta_l^a lambda^k = lambda^k (theta_l + k)^a
      for (int s = 0; s <= p.a; ++s) {
        Integer ks = 1;
        for (int e = 0; e < p.a - s; ++e) ks *= q.i;
        if (ks == 0) continue;
        for (int t = 0; t <= p.b; ++t) {
          Integer lt = 1;
          for (int e = 0; e < p.b - t; ++e) lt *= q.j;
          if (lt == 0) continue;
          Rational coef = c * d * Rational(binomial(p.a, s) * ks * binomial(p.b, t) * lt);
          r += ThetaOperator::term(p.i + q.i, p.j + q.j, s + q.a, t + q.b, coef);
        }
      }
    }
  return r;
}

ThetaOperator operator*(const ThetaOperator& a, const ThetaOperator& b) { return compose(a, b); }

const VarList& theta_vars() {
  static const VarList v{"lambda", "mu", "tl", "tm"};
  return v;
}

Poly ThetaOperator::to_poly() const {
  VarsPtr vars = intern_vars(theta_vars());
  Poly p(vars, Rational(0));
  for (const auto& [k, c] : terms_) {
    Monomial mono = Monomial::var(0, k.i) * Monomial::var(1, k.j) * Monomial::var(2, k.a) * Monomial::var(3, k.b);
    p += Poly::monomial(vars, mono, c);
  }
  return p;
}

ThetaOperator ThetaOperator::from_poly(const Poly& p) {
  Poly q = p.to_vars(theta_vars());
  ThetaOperator r;
  for (const auto& [mono, c] : q.terms()) r.add(Key{int(mono[0]), int(mono[1]), int(mono[2]), int(mono[3])}, c);
  return r;
}

std::string ThetaOperator::str() const { return to_poly().str(); }

ThetaOperator parse_theta(const std::string& text) { return ThetaOperator::from_poly(parse_poly(text, theta_vars())); }

BiSeries apply(const ThetaOperator& op, const BiSeries& s) {
  BiSeries r(s.order());
  for (int d = 0; d <= s.order(); ++d)
    for (int m = 0; m <= d; ++m) {
      int n = d - m;
      Rational acc = 0;
      for (const auto& [k, c] : op.terms()) {
        int n0 = n - k.i, m0 = m - k.j;
        if (n0 < 0 || m0 < 0) continue;
        const Rational& v = s(n0, m0);
        if (v == 0) continue;
        Integer w = 1;
        for (int e = 0; e < k.a; ++e) w *= n0;
        for (int e = 0; e < k.b; ++e) w *= m0;
        if (w != 0) acc += c * Rational(w) * v;
      }
      r.at(n, m) = acc;
    }
  r.set_valid_order(s.valid_order() - op.max_shift());
  return r;
}

bool annihilates(const ThetaOperator& op, const BiSeries& s) {
  BiSeries r = apply(op, s);
  return r.valid_order() >= 0 && r.zero_through(r.valid_order());
}

// ---- printed operators ----

namespace {

const char* kPrinted[4][3] = {
    {"tl*(tl+2*tm) - lambda*(2*tl+5*tm+1)*(2*tl+5*tm+2)",
     "lambda^2*tm^3 + mu*tl*(tl-1)*(2*tl+5*tm+1)",
     "lambda^2*(4*tl^2-2*tl*tm+5*tm^2) - 8*lambda^3*(1+3*tl+5*tm+2*tl^2+5*tl*tm) + 25*mu*tl*(tl-1)"},
    {"lambda*tm^2 - mu*tl^2",
     "lambda*(3*tl+3*tm)*(3*tl+3*tm-1)*(3*tl+3*tm-2)",
     "(1/27)*tl^2 + lambda*(2/9 + tl + tm + tl^2 + 2*tl*tm + tm^2)"},
    {"lambda*tm^2 + mu*tl*(3*tl+4*tm+1)",
     "tl*(tl+tm)^2 + lambda*(3*tl+4*tm+1)*(3*tl+4*tm+2)*(3*tl+4*tm+3)",
     "lambda*tl*(3*tl+2*tm) + mu*tl*(1-tl) + 9*lambda^2*(3*tl+4*tm+1)*(3*tl+4*tm+2)"},
    {"tl^2 - mu*(3*tl+2*tm+1)*(3*tl+2*tm+2)",
     "tl^3 + lambda*(3*tl+2*tm+1)*(3*tl+2*tm+2)*(3*tl+2*tm+3)",
     "tl*(3*tl-2*tm) + 9*lambda*(3*tl+2*tm+1)*(3*tl+2*tm+2) + 4*mu*tl*(3*tl+2*tm+1)"},
};

// Replacements for printed operators that do not annihilate the series.
const std::map<std::pair<int, int>, const char*> kCorrected = {
    {{1, 2}, "tl^2*(tl+tm) + lambda*(3*tl+3*tm+1)*(3*tl+3*tm+2)*(3*tl+3*tm+3)"},
    {{3, 1}, "tm^2 - mu*(3*tl+2*tm+1)*(3*tl+2*tm+2)"},
};

}  // namespace

ThetaOperator printed_operator(int j, int which) {
  if (j < 0 || j > 3 || which < 1 || which > 3) throw std::invalid_argument("unknown operator");
  return parse_theta(kPrinted[j][which - 1]);
}

ThetaOperator period_operator(int j, int which) {
  auto it = kCorrected.find({j, which});
  if (it != kCorrected.end()) return parse_theta(it->second);
  return printed_operator(j, which);
}

// ---- GKZ ----

namespace {

long l1(const Eigen::VectorXi& v) { return v.cwiseAbs().sum(); }

void normalize_sign(Eigen::VectorXi& v) {
  // a_1 on the right-hand side, else first nonzero entry positive
  if (v(0) > 0) v = -v;
  if (v(0) == 0)
    for (int i = 0; i < v.size(); ++i)
      if (v(i) != 0) {
        if (v(i) < 0) v = -v;
        break;
      }
}

std::vector<Eigen::VectorXi> reduced_kernel(const Eigen::MatrixXi& a) {
  IntMatrix A(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) A(i, j) = a(i, j);
  IntMatrix k = integer_kernel(A);
  std::vector<Eigen::VectorXi> basis;
  for (int c = 0; c < k.cols(); ++c) {
    Eigen::VectorXi v(k.rows());
    for (int i = 0; i < k.rows(); ++i) v(i) = int(k(i, c).get_si());
    basis.push_back(v);
  }
  // exchange steps while some v_i -+ v_j shortens v_i
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (i == j) continue;
        for (int s : {1, -1}) {
          Eigen::VectorXi w = basis[i] - s * basis[j];
          if (l1(w) < l1(basis[i])) {
            basis[i] = w;
            changed = true;
          }
        }
      }
  }
  for (auto& v : basis) normalize_sign(v);
  std::sort(basis.begin(), basis.end(), [](const Eigen::VectorXi& x, const Eigen::VectorXi& y) {
    if (l1(x) != l1(y)) return l1(x) < l1(y);
    return std::lexicographical_compare(x.data(), x.data() + x.size(), y.data(), y.data() + y.size());
  });
  return basis;
}

}  // namespace

GkzSystem gkz_from_polytope(const GkzData& g) {
  GkzSystem s;
  s.A = g.A;
  s.beta = g.beta;
  s.box = reduced_kernel(g.A);
  if (s.box.size() != 2) throw std::domain_error("GKZ kernel rank is not 2");
  for (const auto& u : s.box)
    if ((g.A * u).any()) throw std::logic_error("kernel vector does not annihilate A");
  return s;
}

GkzSystem gkz_system(int j) { return gkz_from_polytope(gkz_matrix(standard_polytope(j))); }

std::vector<Poly> euler_images(const GkzSystem& sys, const TorusParam& p) {
  const int r = int(sys.A.rows()), k = int(sys.A.cols());
  VarsPtr vars = intern_vars(theta_vars());
  Poly tl = Poly::variable(theta_vars(), "tl"), tm = Poly::variable(theta_vars(), "tm");
  std::vector<Poly> img(k, Poly(vars, Rational(0)));
  for (int i = r; i < k; ++i) img[i] = tl * Rational(p.ell(i)) + tm * Rational(p.m(i));
  QMatrix block(r, r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) block(a, b) = sys.A(a, b);
  if (det(block) == 0) throw std::domain_error("Euler system is singular");
  QMatrix inv = inverse(block);
  for (int i = 0; i < r; ++i) {
    Poly acc(vars, Rational(0));
    for (int a = 0; a < r; ++a) {
      Poly rhs(vars, Rational(sys.beta(a)));
      for (int c = r; c < k; ++c) rhs -= img[c] * Rational(sys.A(a, c));
      acc += rhs * inv(i, a);
    }
    img[i] = acc;
  }
  return img;
}

ThetaOperator box_operator(const GkzSystem& sys, const TorusParam& p, const Eigen::VectorXi& u) {
  std::vector<Poly> img = euler_images(sys, p);
  // u = P ell + Q m
  QMatrix basis(u.size(), 2), rhs(u.size(), 1);
  for (int i = 0; i < u.size(); ++i) {
    basis(i, 0) = p.ell(i);
    basis(i, 1) = p.m(i);
    rhs(i, 0) = u(i);
  }
  auto sol = solve_linear(basis, rhs);
  if (!sol.consistent) throw std::domain_error("kernel vector outside the parameter lattice");
  Rational P = sol.particular(0, 0), Q = sol.particular(1, 0);
  if (P.get_den() != 1 || Q.get_den() != 1) throw std::domain_error("non-integral parameter exponent");
  int pe = int(P.get_num().get_si()), qe = int(Q.get_num().get_si());

  VarsPtr vars = intern_vars(theta_vars());
  Poly plus(vars, Rational(1)), minus(vars, Rational(1));
  for (int i = 0; i < u.size(); ++i) {
    Poly& side = u(i) > 0 ? plus : minus;
    for (int t = 0; t < std::abs(u(i)); ++t) side *= img[i] - Poly(vars, Rational(t));
  }
  int sign = ((pe % 2 && p.sign_l < 0) ? -1 : 1) * ((qe % 2 && p.sign_m < 0) ? -1 : 1);
  ThetaOperator left = ThetaOperator::term(std::max(0, -pe), std::max(0, -qe), 0, 0);
  ThetaOperator right = ThetaOperator::term(std::max(0, pe), std::max(0, qe), 0, 0, Rational(sign));
  return left * ThetaOperator::from_poly(plus) - right * ThetaOperator::from_poly(minus);
}

std::pair<ThetaOperator, ThetaOperator> reduce_to_theta(const GkzSystem& sys, const TorusParam& p) {
  if (sys.box.size() != 2) throw std::domain_error("GKZ kernel rank is not 2");
  return {box_operator(sys, p, sys.box[0]), box_operator(sys, p, sys.box[1])};
}

namespace {

// (-u_1)! / prod_{i>1} u_i! matches |c(n, m)| for small n + m
bool matches_pattern(const CoeffRule& c, const Eigen::VectorXi& ell, const Eigen::VectorXi& m) {
  for (int d = 0; d <= 4; ++d)
    for (int b = 0; b <= d; ++b) {
      int a = d - b;
      Eigen::VectorXi u = a * ell + b * m;
      if (u(0) > 0) return false;
      Integer den = 1;
      for (int i = 1; i < u.size(); ++i) {
        if (u(i) < 0) return false;
        den *= factorial(u(i));
      }
      Rational val(factorial(-u(0)), den);
      val.canonicalize();
      if (val != abs(c(a, b))) return false;
    }
  return true;
}

}  // namespace

TorusParam torus_param(int j) {
  CoeffRule c = coeff_rule(j);
  GkzSystem sys = gkz_system(j);
  const Eigen::VectorXi& k1 = sys.box[0];
  const Eigen::VectorXi& k2 = sys.box[1];
  std::vector<Eigen::VectorXi> cand;
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b)
      if (a || b) cand.push_back(a * k1 + b * k2);
  BiSeries series = period_series(j, 10);
  for (const auto& ell : cand)
    for (const auto& m : cand) {
      if (!matches_pattern(c, ell, m)) continue;
      for (int sl : {1, -1})
        for (int sm : {1, -1}) {
          TorusParam p{ell, m, sl, sm};
          auto [d1, d2] = reduce_to_theta(sys, p);
          if (annihilates(d1, series) && annihilates(d2, series)) return p;
        }
    }
  throw std::runtime_error("no torus parametrization matches the series");
}

// ---- annihilator search ----

namespace {

const int kThetaShape[6][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};

struct Unknown {
  int k, p, q;
};

std::vector<Unknown> unknowns(const std::vector<int>& degrees) {
  if (degrees.size() != 6) throw std::invalid_argument("six degree bounds expected");
  std::vector<Unknown> u;
  for (int k = 0; k < 6; ++k)
    for (int d = 0; d <= degrees[k]; ++d)
      for (int q = 0; q <= d; ++q) u.push_back({k, d - q, q});
  return u;
}

}  // namespace

std::vector<ThetaOperator> find_annihilator(const BiSeries& s, const std::vector<int>& degrees) {
  std::vector<Unknown> un = unknowns(degrees);
  int shift = *std::max_element(degrees.begin(), degrees.end());
  int valid = s.valid_order() - shift;
  if (valid < 0) throw std::invalid_argument("series too short for the degree bounds");
  std::vector<std::pair<int, int>> rows;
  for (int d = 0; d <= valid; ++d)
    for (int m = 0; m <= d; ++m) rows.push_back({d - m, m});
  QMatrix A(rows.size(), un.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < un.size(); ++c) {
      auto [n, m] = rows[r];
      const Unknown& x = un[c];
      int n0 = n - x.p, m0 = m - x.q;
      if (n0 < 0 || m0 < 0) {
        A(r, c) = 0;
        continue;
      }
      Integer w = 1;
      for (int e = 0; e < kThetaShape[x.k][0]; ++e) w *= n0;
      for (int e = 0; e < kThetaShape[x.k][1]; ++e) w *= m0;
      A(r, c) = Rational(w) * s(n0, m0);
    }
  QMatrix K = kernel(A);
  std::vector<ThetaOperator> out;
  for (int c = 0; c < K.cols(); ++c) {
    ThetaOperator op;
    for (std::size_t i = 0; i < un.size(); ++i)
      op += ThetaOperator::term(un[i].p, un[i].q, kThetaShape[un[i].k][0], kThetaShape[un[i].k][1], K(i, c));
    out.push_back(op);
  }
  return out;
}

bool in_span(const std::vector<ThetaOperator>& basis, const ThetaOperator& op) {
  std::map<ThetaOperator::Key, int> index;
  auto collect = [&](const ThetaOperator& o) {
    for (const auto& [k, c] : o.terms()) index.try_emplace(k, int(index.size()));
  };
  for (const auto& b : basis) collect(b);
  collect(op);
  auto fill = [&](QMatrix& M, int col, const ThetaOperator& o) {
    for (const auto& [k, c] : o.terms()) M(index.at(k), col) = c;
  };
  QMatrix B = QMatrix::Zero(index.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) fill(B, int(i), basis[i]);
  QMatrix C = QMatrix::Zero(index.size(), basis.size() + 1);
  C.leftCols(basis.size()) = B;
  fill(C, int(basis.size()), op);
  return rank(B) == rank(C);
}

BiSeries appell_f4(const Rational& a, const Rational& b, const Rational& c, const Rational& cp, int N) {
  for (const Rational& x : {c, cp})
    if (x <= 0 && x.get_den() == 1) throw std::domain_error("Pochhammer pole in the denominator");
  auto poch = [](const Rational& x, int k) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) r *= x + i;
    return r;
  };
  BiSeries s(N);
  for (int d = 0; d <= N; ++d)
    for (int m = 0; m <= d; ++m) {
      int n = d - m;  // lambda exponent pairs with c
      Rational v = poch(a, d) * poch(b, d) / (poch(c, n) * poch(cp, m));
      v /= Rational(factorial(n) * factorial(m));
      Integer p = 1;
      for (int i = 0; i < d; ++i) p *= 27;
      s.at(n, m) = v * Rational(p);
    }
  return s;
}

}  // namespace k3lab
