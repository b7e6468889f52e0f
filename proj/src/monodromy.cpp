#include "k3lab/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace k3lab {

GramMatrix form_a0() { return int_matrix({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 2, 1}, {0, 0, 1, -2}}); }

const std::vector<NamedElement>& po_generators() {
  static const std::vector<NamedElement> g = {
      {"G1", int_matrix({{1, 1, -1, 2}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 1}})},
      {"G2", int_matrix({{1, -1, -2, -1}, {0, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 0, 1}})},
      {"G3", int_matrix({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 1, -1}})},
      {"H1", int_matrix({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, -1, 1}})},
      {"H2", int_matrix({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})},
  };
  return g;
}

bool is_isometry(const IntMatrix& g, const GramMatrix& a) {
  if (g.rows() != a.rows() || g.cols() != a.cols() || a.rows() != a.cols()) return false;
  return congruence<Integer>(g, a) == a;
}

std::pair<Complex, Complex> half_plane_coords(const CVector4& xi) {
  if (std::abs(xi(1)) < 1e-14 * xi.norm()) throw std::domain_error("point off the period domain");
  CVector4 v = xi / (-xi(1));
  const double r5 = std::sqrt(5.0);
  // (z1, z2) = W^t (xi3, xi4)
  return {v(2) + (1 - r5) / 2 * v(3), v(2) + (1 + r5) / 2 * v(3)};
}

bool component_test(const IntMatrix& g) {
  if (!is_isometry(g, form_a0())) throw std::invalid_argument("not an isometry of A0");
  CMatrix4 gc;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) gc(i, k) = g(i, k).get_d();
  CVector4 ref(1, 1, Complex(0, -1), 0);
  auto [z1, z2] = half_plane_coords(gc * ref);
  if (z1.imag() * z2.imag() <= 0) throw std::logic_error("image point off the period domain");
  return z1.imag() > 0;
}

// ---- paths

std::pair<Complex, Complex> Segment::point(double s) const {
  if (kind == Kind::Line) return {lambda0 + s * (lambda1 - lambda0), mu0 + s * (mu1 - mu0)};
  Complex z = center + radius * std::polar(1.0, angle0 + s * sweep);
  return coordinate == 0 ? std::pair{z, mu0} : std::pair{lambda0, z};
}

std::pair<Complex, Complex> Segment::velocity(double s) const {
  if (kind == Kind::Line) return {lambda1 - lambda0, mu1 - mu0};
  Complex dz = Complex(0, sweep) * radius * std::polar(1.0, angle0 + s * sweep);
  return coordinate == 0 ? std::pair{dz, Complex(0)} : std::pair{Complex(0), dz};
}

bool Loop::closed(double eps) const {
  auto near = [&](std::pair<Complex, Complex> a, std::pair<Complex, Complex> b) {
    return std::abs(a.first - b.first) <= eps && std::abs(a.second - b.second) <= eps;
  };
  std::pair<Complex, Complex> at{lambda, mu};
  for (const auto& s : segments) {
    if (!near(s.point(0), at)) return false;
    at = s.point(1);
  }
  return near(at, {lambda, mu});
}

Loop circle_loop(int coordinate, Complex lambda, Complex mu, double radius) {
  if (radius <= 0) throw std::invalid_argument("radius must be positive");
  Segment s;
  s.kind = Segment::Kind::Arc;
  s.coordinate = coordinate;
  s.center = coordinate == 0 ? lambda : mu;
  s.radius = radius;
  s.sweep = 2 * std::numbers::pi;
  s.lambda0 = lambda;
  s.mu0 = mu;
  Loop l;
  (coordinate == 0 ? s.lambda0 : s.mu0) = s.center + radius;
  l.lambda = s.lambda0;
  l.mu = s.mu0;
  l.segments = {s};
  return l;
}

namespace {

std::vector<Complex> poly_roots(std::vector<Complex> c) {  // c[0] + c[1] x + ...
  while (!c.empty() && std::abs(c.back()) == 0) c.pop_back();
  int d = int(c.size()) - 1;
  if (d < 1) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[i] / c[d];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
  std::vector<Complex> r(es.eigenvalues().data(), es.eigenvalues().data() + d);
  return r;
}

}  // namespace

Loop discriminant_loop(int family, Complex lambda, Complex mu_guess, double radius) {
  Complex best;
  double dist = INFINITY;
  for (const Poly& f : singular_locus(family)) {
    Poly g = f.to_vars(base_vars());
    if (g.degree(1) == 0 || g.is_monomial()) continue;
    std::vector<Complex> c;
    for (const Poly& k : g.coefficients(1)) c.push_back(k.evaluate(std::vector<Complex>{lambda, 0}));
    for (Complex r : poly_roots(c))
      if (std::abs(r - mu_guess) < dist) {
        dist = std::abs(r - mu_guess);
        best = r;
      }
  }
  if (!std::isfinite(dist)) throw std::domain_error("no discriminant component over this lambda");
  return circle_loop(1, lambda, best, radius);
}

Loop concat(const Loop& a, const Loop& b) {
  if (std::abs(a.lambda - b.lambda) > 1e-12 || std::abs(a.mu - b.mu) > 1e-12)
    throw std::invalid_argument("loops have different base points");
  Loop r = a;
  r.segments.insert(r.segments.end(), b.segments.begin(), b.segments.end());
  return r;
}

Loop reversed(const Loop& a) {
  Loop r = a;
  r.segments.clear();
  for (auto it = a.segments.rbegin(); it != a.segments.rend(); ++it) {
    Segment s = *it;
    if (s.kind == Segment::Kind::Line) {
      std::swap(s.lambda0, s.lambda1);
      std::swap(s.mu0, s.mu1);
    } else {
      s.angle0 += s.sweep;
      s.sweep = -s.sweep;
    }
    r.segments.push_back(s);
  }
  return r;
}

Loop lasso(Complex lambda, Complex mu, const Loop& c) {
  Segment out;
  out.kind = Segment::Kind::Line;
  out.lambda0 = lambda;
  out.mu0 = mu;
  out.lambda1 = c.lambda;
  out.mu1 = c.mu;
  Segment back = out;
  std::swap(back.lambda0, back.lambda1);
  std::swap(back.mu0, back.mu1);
  Loop r;
  r.lambda = lambda;
  r.mu = mu;
  r.segments.push_back(out);
  r.segments.insert(r.segments.end(), c.segments.begin(), c.segments.end());
  r.segments.push_back(back);
  return r;
}

// ---- transport

namespace {

struct CompiledPoly {
  struct Term {
    int e0, e1;
    double c;
  };
  std::vector<Term> terms;
  int d0 = 0, d1 = 0;

  explicit CompiledPoly(const Poly& p) {
    Poly q = p.to_vars(base_vars());
    for (const auto& [m, c] : q.terms()) {
      terms.push_back({int(m[0]), int(m[1]), c.get_d()});
      d0 = std::max(d0, int(m[0]));
      d1 = std::max(d1, int(m[1]));
    }
  }
};

class Connection {
 public:
  explicit Connection(const PfaffianSystem& p) {
    auto [a, b] = derivative_frame(p);
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) {
        add(a(i, k), 0, i, k);
        add(b(i, k), 1, i, k);
      }
    std::vector<Poly> dens;
    for (const auto& e : p.alpha.reshaped()) dens.push_back(e.den());
    for (const auto& e : p.beta.reshaped()) dens.push_back(e.den());
    dens.push_back(Poly::variable(base_vars(), "lambda"));
    dens.push_back(Poly::variable(base_vars(), "mu"));
    for (const Poly& f : coprime_base(dens)) {
      factors_.emplace_back(f);
      d0_ = std::max(d0_, factors_.back().d0);
      d1_ = std::max(d1_, factors_.back().d1);
    }
  }

  // Omega(x) applied to the velocity v.
  CMatrix4 operator()(std::pair<Complex, Complex> x, std::pair<Complex, Complex> v) const {
    fill_powers(x);
    CMatrix4 m = CMatrix4::Zero();
    for (const auto& e : entries_) {
      Complex w = e.which == 0 ? v.first : v.second;
      if (w == Complex(0)) continue;
      Complex d = eval(e.den);
      if (std::abs(d) == 0) throw std::domain_error("pole on the path");
      m(e.row, e.col) += w * eval(e.num) / d;
    }
    return m;
  }

  // min |f(x)| / max |coefficient of f| over the coprime denominator factors
  double clearance(std::pair<Complex, Complex> x) const {
    fill_powers(x);
    double c = INFINITY;
    for (const auto& f : factors_) {
      double scale = 0;
      for (const auto& t : f.terms) scale = std::max(scale, std::abs(t.c));
      c = std::min(c, std::abs(eval(f)) / scale);
    }
    return c;
  }

 private:
  struct Entry {
    int which, row, col;
    CompiledPoly num, den;
  };

  void add(const RationalFunction& f, int which, int i, int k) {
    if (f.is_zero()) return;
    entries_.push_back({which, i, k, CompiledPoly(f.num()), CompiledPoly(f.den())});
    d0_ = std::max({d0_, entries_.back().num.d0, entries_.back().den.d0});
    d1_ = std::max({d1_, entries_.back().num.d1, entries_.back().den.d1});
  }

  void fill_powers(std::pair<Complex, Complex> x) const {
    p0_.assign(d0_ + 1, 1.0);
    p1_.assign(d1_ + 1, 1.0);
    for (int i = 1; i <= d0_; ++i) p0_[i] = p0_[i - 1] * x.first;
    for (int i = 1; i <= d1_; ++i) p1_[i] = p1_[i - 1] * x.second;
  }

  Complex eval(const CompiledPoly& p) const {
    Complex s = 0;
    for (const auto& t : p.terms) s += t.c * p0_[t.e0] * p1_[t.e1];
    return s;
  }

  std::vector<Entry> entries_;
  std::vector<CompiledPoly> factors_;
  int d0_ = 0, d1_ = 0;
  mutable std::vector<Complex> p0_, p1_;
};

CMatrix4 rk4(const Connection& omega, const Segment& seg, double s, double h, const CMatrix4& y) {
  auto f = [&](double t, const CMatrix4& v) -> CMatrix4 { return omega(seg.point(t), seg.velocity(t)) * v; };
  CMatrix4 k1 = f(s, y);
  CMatrix4 k2 = f(s + h / 2, y + h / 2 * k1);
  CMatrix4 k3 = f(s + h / 2, y + h / 2 * k2);
  CMatrix4 k4 = f(s + h, y + h * k3);
  return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
}

}  // namespace

double pole_clearance(const PfaffianSystem& p, const Loop& loop, int samples) {
  Connection omega(p);
  double c = INFINITY;
  for (const auto& seg : loop.segments)
    for (int i = 0; i <= samples; ++i) c = std::min(c, omega.clearance(seg.point(double(i) / samples)));
  return c;
}

TransportResult transport(const PfaffianSystem& p, const Loop& loop, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  if (!loop.closed()) throw std::invalid_argument("loop is not closed");
  Connection omega(p);
  for (const auto& seg : loop.segments)
    for (int i = 0; i <= 64; ++i)
      if (omega.clearance(seg.point(i / 64.0)) < 1e-12) throw std::invalid_argument("loop meets a pole");

  TransportResult r;
  r.M = CMatrix4::Identity();
  for (const auto& seg : loop.segments) {
    double s = 0, h = 1.0 / 64;
    while (s < 1) {
      h = std::min(h, 1 - s);
      if (h < 1e-13) throw std::runtime_error("step size underflow");
      CMatrix4 full = rk4(omega, seg, s, h, r.M);
      CMatrix4 half = rk4(omega, seg, s + h / 2, h / 2, rk4(omega, seg, s, h / 2, r.M));
      double scale = std::max(1.0, half.cwiseAbs().maxCoeff());
      double err = (half - full).cwiseAbs().maxCoeff() / 15 / scale;
      if (err <= tol * h) {
        r.M = half + (half - full) / 15;
        r.error += err * scale;
        r.steps += 1;
        s += h;
      }
      double grow = err == 0 ? 4 : 0.9 * std::pow(tol * h / err, 0.25);
      h *= std::clamp(grow, 0.2, 4.0);
    }
  }
  return r;
}

std::vector<Complex> char_poly(const CMatrix4& m) {
  // Faddeev-LeVerrier
  std::vector<Complex> c(5);
  c[4] = 1;
  CMatrix4 mk = CMatrix4::Zero();
  for (int k = 1; k <= 4; ++k) {
    mk = m * mk + c[4 - k + 1] * CMatrix4::Identity();
    c[4 - k] = -(m * mk).trace() / double(k);
  }
  return c;
}

namespace {

// Products of cyclotomic polynomials of degree <= 4 are exactly the monic
// quartics dividing (x^120 - 1)^4.
bool is_cyclotomic_product(const std::vector<long>& c) {
  VarList x{"x"};
  Poly p(x);
  for (std::size_t i = 0; i < c.size(); ++i) p += Poly::variable(x, "x", unsigned(i)) * Rational(c[i]);
  Poly target = (Poly::variable(x, "x", 120) - Poly(x, Rational(1))).pow(4);
  return divide_exact(target, p).has_value();
}

}  // namespace

LocalReport analyse(const CMatrix4& m, double tol) {
  LocalReport r;
  Eigen::ComplexEigenSolver<CMatrix4> es(m);
  for (int i = 0; i < 4; ++i) {
    r.eigenvalues.push_back(es.eigenvalues()(i));
    r.modulus_residual = std::max(r.modulus_residual, std::abs(std::abs(es.eigenvalues()(i)) - 1));
  }
  r.char_poly = char_poly(m);
  for (Complex c : r.char_poly) {
    r.rounded_char_poly.push_back(std::lround(c.real()));
    r.integrality_residual = std::max(r.integrality_residual, std::abs(c - std::round(c.real())));
  }
  r.cyclotomic = is_cyclotomic_product(r.rounded_char_poly);
  r.quasi_unipotent = r.integrality_residual < tol && r.cyclotomic;
  return r;
}

std::optional<CMatrix4> root_orbit_basis(const CMatrix4& reflection, const std::vector<CMatrix4>& gens, int depth) {
  Eigen::ComplexEigenSolver<CMatrix4> es(reflection);
  int k = 0;
  for (int i = 1; i < 4; ++i)
    if (std::abs(es.eigenvalues()(i) + 1.0) < std::abs(es.eigenvalues()(k) + 1.0)) k = i;
  std::vector<CVector4> orbit{es.eigenvectors().col(k)};
  for (int d = 0, first = 0; d < depth; ++d) {
    int last = int(orbit.size());
    for (int i = first; i < last; ++i)
      for (const auto& g : gens) orbit.push_back(g * orbit[i]);
    first = last;
  }
  CMatrix4 b, unit;
  int n = 0;
  for (const auto& v : orbit) {
    unit.col(n) = v / v.norm();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(unit.leftCols(n + 1));
    if (svd.singularValues()(n) < 1e-6) continue;
    b.col(n) = v;
    if (++n == 4) return b;
  }
  return std::nullopt;
}

IntegralityReport integrality_check(const CMatrix4& m, const CMatrix4& b, const GramMatrix& a, double tol) {
  IntegralityReport r;
  Eigen::FullPivLU<CMatrix4> lu(b);
  if (!lu.isInvertible()) throw std::invalid_argument("basis change is singular");
  r.conjugated = lu.solve(m * b);
  r.rounded = IntMatrix(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      Complex x = r.conjugated(i, k);
      double n = std::round(x.real());
      r.rounded(i, k) = Integer(long(n));
      r.residual = std::max(r.residual, std::abs(x - n));
    }
  r.integral = r.residual < tol;
  r.isometry = is_isometry(r.rounded, a);
  return r;
}

}  // namespace k3lab
