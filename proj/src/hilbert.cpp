#include "k3lab/hilbert.hpp"

#include <stdexcept>

#include "k3lab/linalg.hpp"
#include "k3lab/parse.hpp"

namespace k3lab {

const VarList& klein_vars() {
  static const VarList v{"z0", "z1", "z2"};
  return v;
}

const VarList& xy_vars() {
  static const VarList v{"x", "y"};
  return v;
}

KleinInvariants klein_invariants() {
  const VarList& v = klein_vars();
  KleinInvariants k;
  k.A = parse_poly("z0^2 + z1*z2", v);
  k.B = parse_poly("8*z0^4*z1*z2 - 2*z0^2*z1^2*z2^2 + z1^3*z2^3 - z0*(z1^5 + z2^5)", v);
  k.C = parse_poly(
      "320*z0^6*z1^2*z2^2 - 160*z0^4*z1^3*z2^3 + 20*z0^2*z1^4*z2^4 + 6*z1^5*z2^5"
      " - 4*z0*(z1^5 + z2^5)*(32*z0^4 - 20*z0^2*z1*z2 + 5*z1^2*z2^2) + z1^10 + z2^10",
      v);
  Poly d12 = parse_poly(
      "(z1^5 - z2^5)*(-1024*z0^10 + 3840*z0^8*z1*z2 - 3840*z0^6*z1^2*z2^2 + 1200*z0^4*z1^3*z2^3"
      " - 100*z0^2*z1^4*z2^4 + z1^5*z2^5)"
      " + z0*(z1^10 - z2^10)*(352*z0^4 - 160*z0^2*z1*z2 + 10*z1^2*z2^2) + (z1^15 - z2^15)",
      v);
  k.D = d12 * Rational(1, 12);
  return k;
}

std::pair<Poly, Poly> klein_relation_sides() {
  auto [A, B, C, D] = klein_invariants();
  Poly lhs = D * D * Rational(144);
  Poly t = B * B * Rational(5) - A * C;
  Poly rhs = B.pow(5) * Rational(-1728) + A * C * B.pow(3) * Rational(720) - A * A * C * C * B * Rational(80) +
             A.pow(3) * t * t * Rational(64) + C.pow(3);
  return {lhs, rhs};
}

bool verify_klein_relation() {
  auto [l, r] = klein_relation_sides();
  return l == r;
}

bool operator==(const SecondOrderSystem& s, const SecondOrderSystem& t) {
  auto a = s.coefficients(), b = t.coefficients();
  for (int i = 0; i < 8; ++i)
    if (*a[i] != *b[i]) return false;
  return true;
}

namespace {

SecondOrderSystem parse_system(const VarList& vars, const std::array<const char*, 8>& text) {
  SecondOrderSystem s;
  s.vars = vars;
  RF* slots[8] = {&s.l, &s.m, &s.a, &s.b, &s.c, &s.d, &s.p, &s.q};
  for (int i = 0; i < 8; ++i) *slots[i] = parse_rf(text[i], vars);
  return s;
}

RF zero(const VarList& v) { return RF(intern_vars(v), Rational(0)); }
RF one(const VarList& v) { return RF(intern_vars(v), Rational(1)); }
RF var(const VarList& v, int i) { return RF(Poly::variable(v, v[i])); }

}  // namespace

SecondOrderSystem period_system() {
  return parse_system(base_vars(), {
      "2*mu*(-1 + 15*lambda + 100*lambda^2)/(lambda + 16*lambda^2 - 80*lambda^3 + 125*mu)",
      "2*(lambda^2 - 8*lambda^3 + 16*lambda^4 + 5*mu - 50*lambda*mu)/(mu*(lambda + 16*lambda^2 - 80*lambda^3 + 125*mu))",
      "(-1 + 10*lambda)*(1 + 20*lambda)/(lambda + 16*lambda^2 - 80*lambda^3 + 125*mu)",
      "5*mu*(3 + 40*lambda)/(lambda + 16*lambda^2 - 80*lambda^3 + 125*mu)",
      "-5*(-1 + 10*lambda)/(mu*(lambda + 16*lambda^2 - 80*lambda^3 + 125*mu))",
      "(-lambda - 20*lambda^2 + 96*lambda^3 - 200*mu)/(mu*(lambda + 16*lambda^2 - 80*lambda^3 + 125*mu))",
      "2*(1 + 20*lambda)/(lambda + 16*lambda^2 - 80*lambda^3 + 125*mu)",
      "-10/(mu*(lambda + 16*lambda^2 - 80*lambda^3 + 125*mu))",
  });
}

SecondOrderSystem uniformizing_system() {
  return parse_system(xy_vars(), {
      "-20*(4*x^2 + 3*x*y - 4*y)/(36*x^2 - 32*x - y)",
      "-2*(54*x^3 - 50*x^2 - 3*x*y + 2*y)/(5*y*(36*x^2 - 32*x - y))",
      "-2*(20*x^3 - 8*x*y + 9*x^2*y + y^2)/(x*y*(36*x^2 - 32*x - y))",
      "10*y*(-8 + 3*x)/(x*(36*x^2 - 32*x - y))",
      "-2*(-25*x^2 + 27*x^3 + 2*y - 3*x*y)/(5*y^2*(36*x^2 - 32*x - y))",
      "-2*(-120*x^2 + 135*x^3 - 2*y - 3*x*y)/(5*x*y*(36*x^2 - 32*x - y))",
      "-2*(8*x - y)/(x^2*(36*x^2 - 32*x - y))",
      "-2*(-10 + 9*x)/(25*x*y*(36*x^2 - 32*x - y))",
  });
}

SecondOrderSystem sato_system() {
  return parse_system(xy_vars(), {
      "-20*(4*x^2 + 3*x*y - 4*y)/(36*x^2 - 32*x - y)",
      "-2*(54*x^3 - 50*x^2 - 3*x*y + 2*y)/(5*y*(36*x^2 - 32*x - y))",
      "-20*(3*x - 2)/(36*x^2 - 32*x - y)",
      "-10*(8*x + 3*y)/(36*x^2 - 32*x - y)",
      "(3*x - 2)/(5*y*(36*x^2 - 32*x - y))",
      "(-198*x^2 + 180*x + 7*y)/(5*y*(36*x^2 - 32*x - y))",
      "-3/(36*x^2 - 32*x - y)",
      "3/(100*y*(36*x^2 - 32*x - y))",
  });
}

SecondOrderSystem second_order_from_pfaffian(const PfaffianSystem& p) {
  if (p.basis != standard_basis()) throw std::invalid_argument("expected the frame (1, tl, tm, tl^2)");
  const VarList& v = base_vars();
  RF lam = var(v, 0), mu = var(v, 1);
  auto unit = [&](int k) {
    RFMatrix e(4, 1);
    for (int i = 0; i < 4; ++i) e(i, 0) = i == k ? one(v) : zero(v);
    return e;
  };
  RFMatrix tl = unit(1), tm = unit(2), tll = unit(3), tlm(4, 1), tmm(4, 1);
  for (int i = 0; i < 4; ++i) {
    tlm(i, 0) = p.beta(1, i);
    tmm(i, 0) = p.beta(2, i);
  }
  RFMatrix zl(4, 1), zm(4, 1), zlm(4, 1), zll(4, 1), zmm(4, 1);
  for (int i = 0; i < 4; ++i) {
    zl(i, 0) = tl(i, 0) / lam;
    zm(i, 0) = tm(i, 0) / mu;
    zlm(i, 0) = tlm(i, 0) / (lam * mu);
    zll(i, 0) = (tll(i, 0) - tl(i, 0)) / (lam * lam);
    zmm(i, 0) = (tmm(i, 0) - tm(i, 0)) / (mu * mu);
  }
  RFMatrix cols(4, 4), rhs(4, 2);
  for (int i = 0; i < 4; ++i) {
    cols(i, 0) = zlm(i, 0);
    cols(i, 1) = zl(i, 0);
    cols(i, 2) = zm(i, 0);
    cols(i, 3) = i == 0 ? one(v) : zero(v);
    rhs(i, 0) = zll(i, 0);
    rhs(i, 1) = zmm(i, 0);
  }
  auto sol = solve_linear(cols, rhs);
  if (!sol.consistent || sol.kernel.cols() != 0) throw std::domain_error("second-order form does not exist");
  SecondOrderSystem s;
  s.vars = v;
  s.l = sol.particular(0, 0);
  s.a = sol.particular(1, 0);
  s.b = sol.particular(2, 0);
  s.p = sol.particular(3, 0);
  s.m = sol.particular(0, 1);
  s.c = sol.particular(1, 1);
  s.d = sol.particular(2, 1);
  s.q = sol.particular(3, 1);
  return s;
}

// ---- coordinate changes

CoordinateChange identity_change(const VarList& vars) {
  return {vars, vars, var(vars, 0), var(vars, 1), var(vars, 0), var(vars, 1)};
}

CoordinateChange birational_f() {
  CoordinateChange f;
  f.from = base_vars();
  f.to = xy_vars();
  f.u = parse_rf("25*mu/(2*(lambda - 1/4)^3)", f.from);
  f.v = parse_rf("-3125*mu^2/(lambda - 1/4)^5", f.from);
  f.x = parse_rf("1/4 - y/(20*x^2)", f.to);
  f.y = parse_rf("-y^3/(100000*x^5)", f.to);
  return f;
}

RF push_forward(const RF& g, const CoordinateChange& f) {
  return g.substitute({{f.from[0], f.x}, {f.from[1], f.y}}).to_vars(intern_vars(f.to));
}

bool is_inverse_pair(const CoordinateChange& f) {
  std::map<std::string, RF> back{{f.to[0], f.u}, {f.to[1], f.v}};
  bool ok = f.x.substitute(back) == var(f.from, 0) && f.y.substitute(back) == var(f.from, 1);
  return ok && push_forward(f.u, f) == var(f.to, 0) && push_forward(f.v, f) == var(f.to, 1);
}

SecondOrderSystem transform_system(const SecondOrderSystem& s, const CoordinateChange& f) {
  if (s.vars != f.from) throw std::invalid_argument("system and change use different variables");
  const std::string &X = f.from[0], &Y = f.from[1];
  RF ux = f.u.derivative(X), uy = f.u.derivative(Y), vx = f.v.derivative(X), vy = f.v.derivative(Y);
  RF uxx = ux.derivative(X), uxy = ux.derivative(Y), uyy = uy.derivative(Y);
  RF vxx = vx.derivative(X), vxy = vx.derivative(Y), vyy = vy.derivative(Y);
  RF jac = ux * vy - uy * vx;
  if (jac.is_zero()) throw std::domain_error("degenerate Jacobian");
  const RF &l = s.l, &m = s.m;
  RF two = one(f.from) + one(f.from);
  RF lam = l * vy * vy - two * vx * vy + m * vx * vx;
  RF mu = l * uy * uy - two * ux * uy + m * ux * ux;
  RF nu = l * uy * vy - ux * vy - uy * vx + m * ux * vx;
  RF al = (vx * vx - l * vx * vy) / jac;
  RF be = (vy * vy - m * vx * vy) / jac;
  RF ga = (ux * ux - l * ux * uy) / jac;
  RF de = (uy * uy - m * ux * uy) / jac;
  RF ru = uxx - (l * uxy + s.a * ux + s.b * uy);
  RF su = uyy - (m * uxy + s.c * ux + s.d * uy);
  RF rv = vxx - (l * vxy + s.a * vx + s.b * vy);
  RF sv = vyy - (m * vxy + s.c * vx + s.d * vy);
  SecondOrderSystem t;
  t.vars = f.to;
  t.l = push_forward(-lam / nu, f);
  t.m = push_forward(-mu / nu, f);
  t.a = push_forward((ru * be - su * al) / nu, f);
  t.b = push_forward((rv * be - sv * al) / nu, f);
  t.c = push_forward((su * ga - ru * de) / nu, f);
  t.d = push_forward((sv * ga - rv * de) / nu, f);
  t.p = push_forward((al * s.q - be * s.p) / nu, f);
  t.q = push_forward((de * s.p - ga * s.q) / nu, f);
  return t;
}

// ---- integrability

namespace {

using Frame = std::array<RF, 4>;  // coefficients on (Z, Z_X, Z_Y, Z_XY)

Frame operator+(const Frame& a, const Frame& b) {
  Frame r;
  for (int i = 0; i < 4; ++i) r[i] = a[i] + b[i];
  return r;
}
Frame operator*(const RF& c, const Frame& a) {
  Frame r;
  for (int i = 0; i < 4; ++i) r[i] = c * a[i];
  return r;
}

struct FrameCalculus {
  const SecondOrderSystem& s;
  Frame zxx, zyy, zxxy, zxyy;

  explicit FrameCalculus(const SecondOrderSystem& sys) : s(sys) {
    zxx = {s.p, s.a, s.b, s.l};
    zyy = {s.q, s.c, s.d, s.m};
    const std::string &X = s.vars[0], &Y = s.vars[1];
    // Z_XXY = r1 + l Z_XYY, Z_XYY = r2 + m Z_XXY
    Frame r1 = {s.p.derivative(Y), s.a.derivative(Y), s.b.derivative(Y) + s.p, s.l.derivative(Y) + s.a};
    r1 = r1 + s.b * zyy;
    Frame r2 = {s.q.derivative(X), s.c.derivative(X) + s.q, s.d.derivative(X), s.m.derivative(X) + s.d};
    r2 = r2 + s.c * zxx;
    RF det = one(s.vars) - s.l * s.m;
    if (det.is_zero()) throw std::domain_error("lm = 1 identically");
    RF inv = one(s.vars) / det;
    zxxy = inv * (r1 + s.l * r2);
    zxyy = inv * (r2 + s.m * r1);
  }

  // derivative of sum f_i F_i in direction k (0: X, 1: Y)
  Frame diff(const Frame& f, int k) const {
    const std::string& v = s.vars[k];
    Frame r{f[0].derivative(v), f[1].derivative(v), f[2].derivative(v), f[3].derivative(v)};
    RF z = zero(s.vars), o = one(s.vars);
    Frame e1{z, o, z, z}, e2{z, z, o, z}, e3{z, z, z, o};
    const Frame* d[4];
    if (k == 0) {
      d[0] = &e1;
      d[1] = &zxx;
      d[2] = &e3;
      d[3] = &zxxy;
    } else {
      d[0] = &e2;
      d[1] = &e3;
      d[2] = &zyy;
      d[3] = &zxyy;
    }
    for (int i = 0; i < 4; ++i)
      if (!f[i].is_zero()) r = r + f[i] * *d[i];
    return r;
  }
};

}  // namespace

std::array<RF, 4> integrability_conditions(const SecondOrderSystem& s) {
  FrameCalculus fc(s);
  Frame a = fc.diff(fc.zxxy, 1), b = fc.diff(fc.zxyy, 0);
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

bool is_integrable(const SecondOrderSystem& s) {
  for (const RF& c : integrability_conditions(s))
    if (!c.is_zero()) return false;
  return true;
}

// ---- normalization

LogDifferential log_differential(const PowerProduct& factors, const VarList& vars) {
  LogDifferential t{zero(vars), zero(vars)};
  for (const auto& [f, e] : factors) {
    Poly g = f.to_vars(vars);
    RF w = RF(g.vars_ptr(), e / 2) / RF(g);
    t.x += w * RF(g.derivative(vars[0]));
    t.y += w * RF(g.derivative(vars[1]));
  }
  return t;
}

bool is_closed(const LogDifferential& t, const VarList& vars) {
  return t.x.derivative(vars[1]) == t.y.derivative(vars[0]);
}

PowerProduct normalization_factor() {
  const VarList& v = xy_vars();
  return {{parse_poly("x", v), Rational(4)},
          {parse_poly("-36*x^2 + 32*x + y", v), Rational(1)},
          {parse_poly("y", v), Rational(-5, 2)},
          {parse_poly("1728*x^5 - 720*x^3*y + 80*x*y^2 - 64*(5*x^2 - y)^2 - y^3", v), Rational(-3, 2)}};
}

PowerProduct sato_normalization_factor() {
  const VarList& v = xy_vars();
  return {{parse_poly("-36*x^2 + 32*x + y", v), Rational(1)},
          {parse_poly("y", v), Rational(-1, 2)},
          {parse_poly("1728*x^5 - 720*x^3*y + 80*x*y^2 - 64*(5*x^2 - y)^2 - y^3", v), Rational(-3, 2)}};
}

std::array<RF, 4> coeffs_from_normalization(const RF& l, const RF& m, const LogDifferential& theta,
                                           const VarList& vars) {
  const std::string &X = vars[0], &Y = vars[1];
  RF o = one(vars);
  RF w = o - l * m;
  if (w.is_zero()) throw std::domain_error("lm = 1 identically");
  RF xi_x = w.derivative(X) / w, xi_y = w.derivative(Y) / w;
  RF q = RF(intern_vars(vars), Rational(1, 4)), h = RF(intern_vars(vars), Rational(1, 2));
  RF tq = RF(intern_vars(vars), Rational(3, 4));
  // l d(log l) = dl, so log l never appears on its own
  RF a = q * xi_x + theta.x - h * (l.derivative(Y) - l * (q * xi_y) + l * theta.y);
  RF b = h * (l.derivative(X) - l * (tq * xi_x) - l * theta.x);
  RF c = h * (m.derivative(Y) - m * (tq * xi_y) - m * theta.y);
  RF d = q * xi_y + theta.y - h * (m.derivative(X) - m * (q * xi_x) + m * theta.x);
  return {a, b, c, d};
}

PQSolution pq_from_integrability(const VarList& vars, const RF& l, const RF& m, const RF& a, const RF& b,
                                 const RF& c, const RF& d) {
  VarsPtr vp = intern_vars(vars);
  Poly den(vp, Rational(1));
  for (const RF* f : {&l, &m, &a, &b, &c, &d}) {
    Poly g = f->den().to_vars(vp);
    den = *divide_exact(den * g, gcd(den, g));
  }
  den = den * Poly::variable(vars, vars[0]) * Poly::variable(vars, vars[1]);
  unsigned deg = den.total_degree();
  std::vector<RF> basis;
  for (unsigned t = 0; t <= deg; ++t)
    for (unsigned i = 0; i <= t; ++i)
      basis.push_back(RF(Poly::variable(vars, vars[0], i) * Poly::variable(vars, vars[1], t - i), den));

  SecondOrderSystem s{vars, l, m, a, b, c, d, zero(vars), zero(vars)};
  auto base = integrability_conditions(s);
  // the conditions are affine in (p, q)
  int n = int(basis.size());
  std::vector<std::array<RF, 4>> cols;
  for (int k = 0; k < 2 * n; ++k) {
    SecondOrderSystem t = s;
    (k < n ? t.p : t.q) = basis[k % n];
    auto r = integrability_conditions(t);
    for (int i = 0; i < 4; ++i) r[i] -= base[i];
    cols.push_back(r);
  }
  // clear denominators per condition and compare monomial coefficients
  std::map<std::pair<int, Monomial>, int> index;
  std::vector<std::vector<std::pair<int, Rational>>> entries(2 * n + 1);
  for (int i = 0; i < 4; ++i) {
    Poly lcm = base[i].den().to_vars(vp);
    for (const auto& col : cols) {
      Poly g = col[i].den().to_vars(vp);
      lcm = *divide_exact(lcm * g, gcd(lcm, g));
    }
    auto add = [&](int k, const RF& f) {
      Poly num = f.num().to_vars(vp) * *divide_exact(lcm, f.den().to_vars(vp));
      for (const auto& [mono, coef] : num.terms()) {
        auto it = index.emplace(std::pair{i, mono}, int(index.size())).first;
        entries[k].emplace_back(it->second, coef);
      }
    };
    for (int k = 0; k < 2 * n; ++k) add(k, cols[k][i]);
    add(2 * n, -base[i]);
  }
  int neq = int(index.size());
  QMatrix A = QMatrix::Constant(neq, 2 * n, Rational(0)), B = QMatrix::Constant(neq, 1, Rational(0));
  for (int k = 0; k < 2 * n; ++k)
    for (auto& [r, v] : entries[k]) A(r, k) += v;
  for (auto& [r, v] : entries[2 * n]) B(r, 0) += v;
  auto sol = solve_linear(A, B);
  if (!sol.consistent) throw std::domain_error("no rational p, q with the expected denominator");
  PQSolution out{zero(vars), zero(vars), sol.kernel.cols() == 0};
  for (int k = 0; k < 2 * n; ++k)
    if (sol.particular(k, 0) != 0) (k < n ? out.p : out.q) += RF(vp, sol.particular(k, 0)) * basis[k % n];
  return out;
}

Poly branch_locus() {
  return parse_poly("y*(1728*x^5 - 720*x^3*y + 80*x*y^2 - 64*(5*x^2 - y)^2 - y^3)", xy_vars());
}

}  // namespace k3lab
