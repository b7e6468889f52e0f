#include "k3lab/pfaffian.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "k3lab/linalg.hpp"
#include "k3lab/parse.hpp"

namespace k3lab {

const VarList& base_vars() {
  static const VarList v{"lambda", "mu"};
  return v;
}

const std::vector<ThetaMonomial>& standard_basis() {
  static const std::vector<ThetaMonomial> b{{0, 0}, {1, 0}, {0, 1}, {2, 0}};
  return b;
}

const std::vector<ThetaMonomial>& alternate_basis() {
  static const std::vector<ThetaMonomial> b{{0, 0}, {1, 0}, {0, 1}, {0, 2}};
  return b;
}

namespace {

RF zero_rf() { return RF(intern_vars(base_vars()), Rational(0)); }
RF one_rf() { return RF(intern_vars(base_vars()), Rational(1)); }

RFMatrix zeros(int r, int c) {
  RFMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = zero_rf();
  return m;
}

RFMatrix theta_of(const RFMatrix& m, const std::string& var) {
  RFMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).theta(var).to_vars(intern_vars(base_vars()));
  return r;
}

// ---- printed data ----

struct PrintedFamily {
  const char* t;
  const char* s;
  const char* alpha[4][4];
  const char* beta[4][4];
};

std::string expand(std::string text, const char* t, const char* s) {
  std::string out;
  for (char ch : text) {
    if (ch == 'T')
      out += std::string("(") + t + ")";
    else if (ch == 'S')
      out += std::string("(") + s + ")";
    else
      out += ch;
  }
  return out;
}

// lambda -> l, mu -> m in the tables; T and S stand for t_j and s_j.
std::string rename(const std::string& text) {
  std::string out;
  for (char ch : text) {
    if (ch == 'l')
      out += "lambda";
    else if (ch == 'm')
      out += "mu";
    else
      out += ch;
  }
  return out;
}

const PrintedFamily kPrinted[4] = {
    {"l^2*(4*l-1)^3-2*(2+25*l*(20*l-1))*m-3125*m^2",
     "1-15*l-100*l^2",
     {{"0", "1", "0", "0"},
      {"0", "0", "0", "1"},
      {"l*(1+20*l)/S", "(6*l^2+120*l^3+125*m)/(2*l*S)", "5*l*(3+40*l)/(2*S)",
       "-(l+16*l^2-80*l^3+125*m)/(2*l*S)"},
      {"-l^3*(2+2125*m+l*(-17+616*l-2320*l^2+2500*(9+80*l)*m))/(S*T)",
       "-(-2*l^3*(-1+4*l)*(8+5*l*(-13+4*l*(83+40*l)))+(-16+5*l*(94+5*l*(59+10*l*(-73+20*l*(37+160*l)))))*m"
       "+3125*(-4+5*l*(21+200*l))*m^2)/(2*S*T)",
       "-l^3*(22+26875*m+l*(-47+300000*m+100*l*(51+4*l*(-49+20*l)+20000*m)))/(2*S*T)",
       "(12*T*S+3*S*(15*l-2)+2*T*(-3*(1-4*l)^2*l^2*(-1+10*l)+75*l*(-1+40*l)*m))/(2*S*T)"}},
     {{"0", "0", "1", "0"},
      {"l*(1+20*l)/S", "(6*l^2+120*l^3+125*m)/(2*l*S)", "5*l*(3+40*l)/(2*S)",
       "-(l+16*l^2-80*l^3+125*m)/(2*l*S)"},
      {"-2*l*(-1+4*l)/S", "-(6*l^3*(-1+4*l)-5*m+50*l*m)/(l^2*S)", "-l*(-11+20*l)/S",
       "-((1-4*l)^2*l^2-(5-50*l)*m)/(l^2*S)"},
      {"-(4*(1-4*l)^2*l^4*(7+20*l)-l*(-4+25*l*(-3+2*l*(-7+20*l*(1+80*l))))*m+3125*l*(1+20*l)*m^2)/(T*S)",
       "-(24*(1-4*l)^2*l^5*(7+20*l)-2*l*(-4+5*l*(8+l*(-43+10*l*(-57+20*l*(7+160*l)))))*m"
       "-125*(-4+25*l*(-3+32*l*(1+10*l)))*m^2+390625*m^3)/(2*l*T*S)",
       "-(4*l^3*(-1+4*l)*(-1+2*l*(-32+25*l*(1+12*l)))+15625*l*(3+40*l)*m^2"
       "-5*l*(-12+5*l*(-1+10*l)*(33+20*l*(23+160*l)))*m)/(2*T*S)",
       "-(4*l^4*(-1+4*l)^3*(7+20*l)+3*l*(-4+l*(31-490*l+76000*l^3))*m+250*(-2+25*l*(-2+l*(11+260*l)))*m^2"
       "-390625*m^3)/(2*l*T*S)"}}},
    {"729*l^2-54*l*(27*m-1)+(1+27*m)^2",
     "1",
     {{"0", "1", "0", "0"},
      {"0", "0", "0", "1"},
      {"-1/9", "-1/2", "-1/2", "-(1+27*l+27*m)/(54*l)"},
      {"3*l*(1-27*l+27*m)/T", "3*l*(5-351*l+135*m)/(2*T)", "27*l*(1-3*l+27*m)/(2*T)",
       "3*(-729*l^2+(1+27*m)^2)/(2*T)"}},
     {{"0", "0", "1", "0"},
      {"-1/9", "-1/2", "-1/2", "-(1+27*l+27*m)/(54*l)"},
      {"0", "0", "0", "m/l"},
      {"3*l*(1+27*l-27*m)/T", "27*l*(1+27*l-3*m)/(2*T)", "3*l*(5+135*l-351*m)/(2*T)",
       "((1+27*l)^2+108*(27*l-1)*m-3645*m^2)/(2*T)"}}},
    {"l^2*(1+27*l)^2-2*l*m*(1+189*l)+(1+576*l)*m^2-256*m^3",
     "1+108*l-288*m",
     {{"0", "1", "0", "0"},
      {"0", "0", "0", "1"},
      {"-9*l/S", "-(81*l^2+m-144*l*m)/(2*l*S)", "-54*l/S", "(-3*l*(1+27*l-144*m)+m)/(2*l*S)"},
      {"-6*l^3*(1+1458*l^2-2592*l*m+6*m*(-55+4608*m))/(T*S)",
       "(-3*l^2*(11+54*l*(5+351*l))+l*(1+4*l*(61+810*l*(5+72*l)))*m+64*(17+2808*l)*m^3-147456*m^4"
       "-2*(1+9*l*(53+32*l*(131+864*l)))*m^2)/(T*S)",
       "-8*l^3*((2-27*l)^2+9*(-133+2160*l)*m+82944*m^2)/(T*S)",
       "(3*R*S+162*l*R-3*l*S*(l+81*l^2+1458*l^3-378*l*m+m*(-1+288*m)))/(T*S)"}},
     {{"0", "0", "1", "0"},
      {"-9*l/S", "-(81*l^2+m-144*l*m)/(2*l*S)", "-54*l/S", "(-3*l*(1+27*l-144*m)+m)/(2*l*S)"},
      {"36*m/S", "m*(l*(-1+54*l)+2*m)/(l^2*S)", "216*m/S", "(3*(1-54*l)*l-2*m)*m/(l^2*S)"},
      {"3*l*(81*l^3*(1+27*l)+l*(-1+36*l)*(-5+108*l)*m+3*(-1+32*l)*(1+432*l)*m^2+768*m^3)/(T*S)",
       "(2187*l^5*(1+27*l)-(1+192*l*(11+1164*l))*m^3+256*(1+864*l)*m^4-l^2*(2+27*l*(4+9*l*(77+864*l)))*m"
       "+l*(5+l*(1279+864*l*(85+864*l)))*m^2)/(2*l*T*S)",
       "2*l*(3*l^2*(1+27*l)*(-1+135*l)+2*l*(23+54*l*(-11+972*l))*m+9*(-3+64*l)*(1+432*l)*m^2+6912*m^3)/(T*S)",
       "-(-81*l^4*(1+27*l)^2+l^2*(-7+9*l*(-58+27*l*(-125+3456*l)))*m+l*(8+9*l*(425+24192*l))*m^2"
       "-(1+3456*l*(1+162*l))*m^3+256*(1+1440*l)*m^4)/(2*l*T*S)"}}},
    {"729*l^2-(4*m-1)^3+54*l*(1+12*m)",
     "-54*l+(1-4*m)^2",
     {{"0", "1", "0", "0"},
      {"0", "0", "0", "1"},
      {"9*l/S", "(81*l+4*(1-4*m)*m)/(2*S)", "27*l/S", "(3+81*l-48*m^2)/(2*S)"},
      {"-2*l*(-2187*l^2+27*l*(4*m-9)*(4*m-1)-(-1+4*m)^3*(3+8*m))/(T*S)",
       "3*l*(9477*l^2+(1-4*m)^2*(-11+4*m*(-9+16*m))-27*l*(25+4*m*(-31+40*m)))/(T*S)",
       "2*l*(729*l^2+(-1+4*m)^3*(11+16*m)+27*l*(-1+4*m)*(19+20*m))/(T*S)",
       "81*l*(-2+27*l+8*m)*(1+27*l-16*m^2)/(T*S)"}},
     {{"0", "0", "1", "0"},
      {"9*l/S", "(81*l+4*(1-4*m)*m)/(2*S)", "27*l/S", "(3+81*l-48*m^2)/(2*S)"},
      {"-2*m*(-1+4*m)/S", "-3*m*(-3+4*m)/S", "-6*m*(-1+4*m)/S", "9*m*(3+4*m)/S"},
      {"-3*l*(2187*l^2+32*(1-4*m)^2*m*(1+m)+27*l*(3+16*m*(2+m)))/(T*S)",
       "-9*l*(6561*l^2-81*l*(-3+4*m)*(1+8*m)+4*m*(-1+4*m)*(-33+4*m*(-3+16*m)))/(2*T*S)",
       "-3*l*(3645*l^2+2*(1-4*m)^2*(1+16*m*(3+2*m))+27*l*(7+16*m*(5+9*m)))/(T*S)",
       "(-R*S+R*(-8+351*l+32*m)+S*(9*(729*l^2+(1-4*m)^2+54*l*(1+8*m))))/(2*T*S)"}}},
};

}  // namespace

const std::vector<PfaffianRepair>& pfaffian_repairs() {
  static const std::vector<PfaffianRepair> r = {
      {0, 'a', 3, 3, "(12*T*S+3*T*(15*l-2)+2*S*(-3*(1-4*l)^2*l^2*(-1+10*l)+75*l*(-1+40*l)*m))/(2*S*T)",
       "t and s exchanged in the last two terms"},
      {0, 'b', 2, 3, "-((1-4*l)^2*l^2+(5-50*l)*m)/(l^2*S)", "sign of the mu term"},
      {2, 'a', 3, 1,
       "(-3*l^3*(11+54*l*(5+351*l))+l*(1+4*l*(61+810*l*(5+72*l)))*m+64*(17+2808*l)*m^3-147456*m^4"
       "-2*(1+9*l*(53+32*l*(131+864*l)))*m^2)/(T*S)",
       "leading power lambda^3, printed lambda^2"},
      {2, 'a', 3, 3, "(3*T*S+162*l*T-3*l*S*(l+81*l^2+1458*l^3-378*l*m+m*(-1+288*m)))/(T*S)",
       "undefined r read as t"},
      {3, 'b', 3, 3, "(-T*S+T*(-8+351*l+32*m)+S*(9*(729*l^2+(1-4*m)^2+54*l*(1+8*m))))/(2*T*S)",
       "undefined r read as t"},
  };
  return r;
}

namespace {

RF parse_entry(int j, const std::string& raw) {
  if (raw.find('R') != std::string::npos) throw std::domain_error("entry uses an undefined symbol");
  return parse_rf(rename(expand(raw, kPrinted[j].t, kPrinted[j].s)), base_vars());
}

std::string repaired_text(int j, char matrix, int r, int c) {
  for (const auto& x : pfaffian_repairs())
    if (x.family == j && x.matrix == matrix && x.row == r && x.col == c) return x.text;
  return matrix == 'a' ? kPrinted[j].alpha[r][c] : kPrinted[j].beta[r][c];
}

}  // namespace

RF printed_entry(int j, char matrix, int r, int c) {
  if (j < 0 || j > 3 || r < 0 || r > 3 || c < 0 || c > 3) throw std::invalid_argument("entry out of range");
  return parse_entry(j, matrix == 'a' ? kPrinted[j].alpha[r][c] : kPrinted[j].beta[r][c]);
}

PfaffianSystem pfaffian_data(int j) {
  if (j < 0 || j > 3) throw std::invalid_argument("unknown family");
  PfaffianSystem p;
  p.family = j;
  p.basis = standard_basis();
  p.alpha = zeros(4, 4);
  p.beta = zeros(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      p.alpha(r, c) = parse_entry(j, repaired_text(j, 'a', r, c));
      p.beta(r, c) = parse_entry(j, repaired_text(j, 'b', r, c));
    }
  return p;
}

// ---- integrability ----

RFMatrix integrability_residual(const PfaffianSystem& p) {
  RFMatrix r = theta_of(p.alpha, "mu") - theta_of(p.beta, "lambda");
  r += mul<RF>(p.alpha, p.beta) - mul<RF>(p.beta, p.alpha);
  return r;
}

bool check_integrability(const PfaffianSystem& p) {
  RFMatrix r = integrability_residual(p);
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j)
      if (!r(i, j).is_zero()) return false;
  return true;
}

// ---- derivation ----

namespace {

using ThetaPoly = std::map<ThetaMonomial, RF>;

ThetaPoly to_theta_poly(const ThetaOperator& op) {
  VarsPtr vars = intern_vars(base_vars());
  std::map<ThetaMonomial, Poly> acc;
  for (const auto& [k, c] : op.terms()) {
    Monomial m = Monomial::var(0, k.i) * Monomial::var(1, k.j);
    auto it = acc.try_emplace({k.a, k.b}, Poly(vars, Rational(0))).first;
    it->second += Poly::monomial(vars, m, c);
  }
  ThetaPoly out;
  for (auto& [k, p] : acc)
    if (!p.is_zero()) out[k] = RF(p);
  return out;
}

// theta_x * (f theta^k) = f theta^(k+e_x) + theta_x(f) theta^k
ThetaPoly left_theta(const ThetaPoly& p, int which) {
  ThetaPoly out;
  const std::string var = which == 0 ? "lambda" : "mu";
  auto add = [&](ThetaMonomial k, const RF& v) {
    if (v.is_zero()) return;
    auto [it, fresh] = out.try_emplace(k, v);
    if (!fresh) it->second += v;
  };
  for (const auto& [k, f] : p) {
    ThetaMonomial up = which == 0 ? ThetaMonomial{k.first + 1, k.second} : ThetaMonomial{k.first, k.second + 1};
    add(up, f);
    add(k, f.theta(var).to_vars(intern_vars(base_vars())));
  }
  return out;
}

int degree(const ThetaMonomial& m) { return m.first + m.second; }

}  // namespace

PfaffianSystem derive_pfaffian(const ThetaOperator& d1, const ThetaOperator& d3, int family,
                               const std::vector<ThetaMonomial>& basis) {
  if (basis.size() != 4) throw std::invalid_argument("rank-4 basis expected");
  // targets: theta_x * e for each basis element
  std::vector<ThetaMonomial> targets;
  for (int x = 0; x < 2; ++x)
    for (const auto& e : basis) targets.push_back(x == 0 ? ThetaMonomial{e.first + 1, e.second} : ThetaMonomial{e.first, e.second + 1});
  int top = 0;
  for (const auto& t : targets) top = std::max(top, degree(t));

  for (int extra = 0; extra <= 1; ++extra) {
    int bound = top + extra;
    // generators of the ideal up to theta-degree bound
    std::vector<ThetaPoly> gens;
    std::vector<ThetaPoly> layer{to_theta_poly(d1), to_theta_poly(d3)};
    auto deg = [](const ThetaPoly& p) {
      int d = 0;
      for (const auto& [k, v] : p) d = std::max(d, degree(k));
      return d;
    };
    while (!layer.empty()) {
      std::vector<ThetaPoly> next;
      for (const auto& g : layer) {
        if (deg(g) > bound) continue;
        gens.push_back(g);
        next.push_back(left_theta(g, 0));
        next.push_back(left_theta(g, 1));
      }
      layer = std::move(next);
    }
    std::vector<ThetaMonomial> monos;
    for (int d = 0; d <= bound; ++d)
      for (int b = 0; b <= d; ++b) monos.push_back({d - b, b});
    auto index = [&](const ThetaMonomial& m) {
      return int(std::find(monos.begin(), monos.end(), m) - monos.begin());
    };
    int n = int(monos.size()), ng = int(gens.size());
    RFMatrix A = zeros(n, ng + 4);
    for (int g = 0; g < ng; ++g)
      for (const auto& [k, v] : gens[g]) A(index(k), g) = v;
    for (int e = 0; e < 4; ++e) A(index(basis[e]), ng + e) = one_rf();
    RFMatrix B = zeros(n, int(targets.size()));
    for (std::size_t t = 0; t < targets.size(); ++t) B(index(targets[t]), int(t)) = one_rf();
    auto sol = solve_linear(A, B);
    if (!sol.consistent) continue;
    // basis must stay independent modulo the ideal
    for (int c = 0; c < sol.kernel.cols(); ++c)
      for (int e = 0; e < 4; ++e)
        if (!sol.kernel(ng + e, c).is_zero()) throw std::domain_error("basis is dependent modulo the ideal");
    PfaffianSystem p;
    p.family = family;
    p.basis = basis;
    p.alpha = zeros(4, 4);
    p.beta = zeros(4, 4);
    for (int r = 0; r < 4; ++r)
      for (int e = 0; e < 4; ++e) {
        p.alpha(r, e) = sol.particular(ng + e, r).to_vars(intern_vars(base_vars()));
        p.beta(r, e) = sol.particular(ng + e, 4 + r).to_vars(intern_vars(base_vars()));
      }
    return p;
  }
  throw std::domain_error("reduction does not close on the basis");
}

PfaffianSystem derive_pfaffian(int j) { return derive_pfaffian(period_operator(j, 1), period_operator(j, 3), j); }

PfaffianSystem gauge(const PfaffianSystem& p, const RFMatrix& g) {
  RFMatrix gi = inverse(g);
  PfaffianSystem q = p;
  q.alpha = mul<RF>(RFMatrix(theta_of(g, "lambda") + mul<RF>(g, p.alpha)), gi);
  q.beta = mul<RF>(RFMatrix(theta_of(g, "mu") + mul<RF>(g, p.beta)), gi);
  return q;
}

std::pair<RFMatrix, RFMatrix> derivative_frame(const PfaffianSystem& p) {
  RF l = RF(Poly::variable(base_vars(), "lambda")), m = RF(Poly::variable(base_vars(), "mu"));
  RFMatrix a = p.alpha, b = p.beta;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      a(i, j) /= l;
      b(i, j) /= m;
    }
  return {a, b};
}

// ---- singular locus ----

std::vector<Poly> SingularLocus::true_factors() const {
  std::vector<Poly> out;
  for (const auto& f : factors)
    if (!f.apparent) out.push_back(f.factor);
  return out;
}

std::vector<Poly> SingularLocus::apparent_factors() const {
  std::vector<Poly> out;
  for (const auto& f : factors)
    if (f.apparent) out.push_back(f.factor);
  return out;
}

std::vector<Poly> coprime_base(const std::vector<Poly>& polys) {
  std::vector<Poly> base;
  auto insert = [&](Poly p) {
    std::vector<Poly> work{primitive_part(p)};
    while (!work.empty()) {
      Poly q = work.back();
      work.pop_back();
      if (q.is_constant()) continue;
      bool split = false;
      for (std::size_t i = 0; i < base.size(); ++i) {
        Poly g = gcd(q, base[i]);
        if (g.is_constant()) continue;
        Poly b = base[i];
        base.erase(base.begin() + long(i));
        work.push_back(g);
        work.push_back(*divide_exact(q, g));
        work.push_back(*divide_exact(b, g));
        split = true;
        break;
      }
      if (!split) {
        // drop repeated factors
        Poly r = q;
        for (;;) {
          bool found = false;
          for (int v = 0; v < r.nvars() && !found; ++v) {
            if (!r.uses(v)) continue;
            Poly g = gcd(r, r.derivative(v));
            if (!g.is_constant()) {
              work.push_back(g);
              work.push_back(*divide_exact(r, g));
              found = true;
            }
          }
          if (found) break;
          base.push_back(primitive_part(r));
          break;
        }
      }
    }
  };
  for (const auto& p : polys)
    if (!p.is_zero()) insert(p.to_vars(base_vars()));
  std::sort(base.begin(), base.end(), [](const Poly& a, const Poly& b) {
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
    return a.str() < b.str();
  });
  return base;
}

namespace {

std::vector<Poly> denominators(const PfaffianSystem& p) {
  std::vector<Poly> d;
  for (const RFMatrix* m : {&p.alpha, &p.beta})
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) d.push_back((*m)(i, j).den());
  return d;
}

bool divides_any(const Poly& f, const std::vector<Poly>& dens) {
  for (const auto& d : dens)
    if (!gcd(f, d.to_vars(base_vars())).is_constant()) return true;
  return false;
}

}  // namespace

SingularLocus singular_locus_from(const PfaffianSystem& p) {
  Poly l = Poly::variable(base_vars(), "lambda"), m = Poly::variable(base_vars(), "mu");
  std::vector<Poly> dens = denominators(p);
  std::vector<Poly> all = dens;
  bool constant = true;
  for (const auto& d : dens) constant &= d.is_constant();
  for (int i = 0; i < 4 && constant; ++i)
    for (int j = 0; j < 4 && constant; ++j) constant &= p.alpha(i, j).is_constant() && p.beta(i, j).is_constant();
  SingularLocus out;
  if (constant) return out;
  all.push_back(l);
  all.push_back(m);
  std::vector<Poly> base = coprime_base(all);

  // the alternate frame (1, tl, tm, tm^2) is reached through the tm^2 row of beta
  std::vector<Poly> alt_dens;
  int row = -1;
  for (int r = 0; r < 4; ++r)
    if (p.basis[r] == ThetaMonomial{0, 1}) row = r;
  RFMatrix g = zeros(4, 4);
  for (int r = 0; r < 4; ++r) g(r, r) = one_rf();
  int replaced = -1;
  for (int r = 0; r < 4; ++r)
    if (p.basis[r] == ThetaMonomial{2, 0}) replaced = r;
  bool have_alt = false;
  if (row >= 0 && replaced >= 0) {
    for (int c = 0; c < 4; ++c) g(replaced, c) = p.beta(row, c);
    try {
      if (!det(g).is_zero()) {
        alt_dens = denominators(gauge(p, g));
        have_alt = true;
      }
    } catch (const std::exception&) {
      have_alt = false;
    }
  }
  for (const auto& f : base) {
    bool coordinate = f == primitive_part(l) || f == primitive_part(m);
    bool apparent = !coordinate && have_alt && !divides_any(f, alt_dens);
    out.factors.push_back({f, apparent});
  }
  return out;
}

}  // namespace k3lab
