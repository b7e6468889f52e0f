// Multivariate gcd over Z: heuristic gcd (evaluation / balanced xi-adic
// interpolation, accepted only after trial division) with a primitive PRS
// fallback. Division and content helpers live here too.
#include <algorithm>
#include <functional>

#include "k3lab/poly.hpp"

namespace k3lab {
namespace {

struct ZPoly {
  std::vector<std::pair<Monomial, Integer>> t;  // descending, nonzero
  bool zero() const { return t.empty(); }
  bool constant() const { return t.empty() || (t.size() == 1 && t[0].first.is_one()); }
};

using ZMap = std::map<Monomial, Integer, std::greater<Monomial>>;

ZPoly from_map(const ZMap& m) {
  ZPoly r;
  r.t.reserve(m.size());
  for (auto& [k, c] : m)
    if (c != 0) r.t.emplace_back(k, c);
  return r;
}

ZPoly zconst(const Integer& c, Monomial m = Monomial()) {
  ZPoly r;
  if (c != 0) r.t.emplace_back(m, c);
  return r;
}

ZPoly to_z(const Poly& p) {
  ZPoly r;
  r.t.reserve(p.size());
  for (auto& [m, c] : p.terms()) {
    if (c.get_den() != 1) throw std::logic_error("to_z: non-integral coefficient");
    r.t.emplace_back(m, c.get_num());
  }
  return r;
}

Poly to_q(const ZPoly& z, const VarsPtr& v) {
  Poly::Terms t;
  t.reserve(z.t.size());
  for (auto& [m, c] : z.t) t.emplace_back(m, Rational(c));
  return Poly(v, std::move(t));
}

unsigned zdeg(const ZPoly& p, int v) {
  unsigned d = 0;
  for (auto& [m, c] : p.t) d = std::max(d, m[v]);
  return d;
}

unsigned used_mask(const ZPoly& p) {
  unsigned mask = 0;
  for (auto& [m, c] : p.t)
    for (int i = 0; i < Monomial::kMaxVars; ++i)
      if (m[i]) mask |= 1u << i;
  return mask;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.zero() || b.zero()) return {};
  ZMap acc;
  Integer tmp;
  for (auto& [ma, ca] : a.t)
    for (auto& [mb, cb] : b.t) {
      tmp = ca * cb;
      auto [it, fresh] = acc.try_emplace(ma * mb, tmp);
      if (!fresh) it->second += tmp;
    }
  return from_map(acc);
}

ZPoly zscale(ZPoly a, const Integer& c, Monomial m = Monomial()) {
  if (c == 0) return {};
  for (auto& [k, v] : a.t) {
    k = k * m;
    v *= c;
  }
  return a;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
  ZMap acc;
  for (auto& [m, c] : a.t) acc[m] += c;
  for (auto& [m, c] : b.t) acc[m] -= c;
  return from_map(acc);
}

Integer int_content(const ZPoly& p) {
  Integer g = 0;
  for (auto& [m, c] : p.t) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Integer max_norm(const ZPoly& p) {
  Integer n = 0;
  for (auto& [m, c] : p.t)
    if (abs(c) > n) n = abs(c);
  return n;
}

// Positive leading coefficient, unit integer content.
ZPoly zprimitive(ZPoly p) {
  if (p.zero()) return p;
  Integer g = int_content(p);
  if (p.t.front().second < 0) g = -g;
  if (g != 1)
    for (auto& [m, c] : p.t) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return p;
}

Monomial zmono_content(const ZPoly& p) {
  Monomial g = p.t.front().first;
  for (auto& [m, c] : p.t) g = Monomial::gcd(g, m);
  return g;
}

// Exact division over Z; nullopt when b does not divide a.
std::optional<ZPoly> zdivide(const ZPoly& a, const ZPoly& b) {
  if (b.zero()) throw std::domain_error("division by zero polynomial");
  if (a.zero()) return ZPoly{};
  for (int v = 0; v < Monomial::kMaxVars; ++v)
    if (zdeg(b, v) > zdeg(a, v)) return std::nullopt;
  ZMap r;
  for (auto& [m, c] : a.t) r.emplace(m, c);
  ZMap q;
  const Monomial lb = b.t.front().first;
  const Integer& cb = b.t.front().second;
  Integer qc, rem;
  while (!r.empty()) {
    auto it = r.begin();
    if (!lb.divides(it->first)) return std::nullopt;
    mpz_tdiv_qr(qc.get_mpz_t(), rem.get_mpz_t(), it->second.get_mpz_t(), cb.get_mpz_t());
    if (rem != 0) return std::nullopt;
    Monomial qm = it->first / lb;
    for (int v = 0; v < Monomial::kMaxVars; ++v)
      if (qm[v] + zdeg(b, v) > zdeg(a, v)) return std::nullopt;
    q.emplace(qm, qc);
    for (auto& [m, c] : b.t) {
      Monomial k = m * qm;
      auto f = r.find(k);
      if (f == r.end()) {
        r.emplace(k, -c * qc);
      } else {
        f->second -= c * qc;
        if (f->second == 0) r.erase(f);
      }
    }
  }
  return from_map(q);
}

ZPoly zexact(const ZPoly& a, const ZPoly& b) {
  auto q = zdivide(a, b);
  if (!q) throw std::logic_error("expected exact division");
  return *q;
}

ZPoly zeval(const ZPoly& p, int v, const Integer& xi) {
  std::vector<Integer> pw{Integer(1)};
  ZMap acc;
  for (auto& [m, c] : p.t) {
    unsigned e = m[v];
    while (pw.size() <= e) pw.push_back(pw.back() * xi);
    acc[m.with(v, 0)] += c * pw[e];
  }
  return from_map(acc);
}

ZPoly zinterp(const ZPoly& h, int v, const Integer& xi) {
  ZMap acc;
  Integer half = xi / 2;
  for (auto& [m, c0] : h.t) {
    Integer c = c0, d;
    unsigned k = 0;
    while (c != 0) {
      mpz_fdiv_r(d.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
      if (d > half) d -= xi;
      if (d != 0) acc[m.with(v, m[v] + k)] += d;
      c -= d;
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
      ++k;
    }
  }
  return from_map(acc);
}

std::vector<ZPoly> zcoeffs(const ZPoly& p, int v) {
  std::vector<ZMap> parts(zdeg(p, v) + 1);
  for (auto& [m, c] : p.t) parts[m[v]].emplace(m.with(v, 0), c);
  std::vector<ZPoly> out;
  for (auto& m : parts) out.push_back(from_map(m));
  return out;
}

ZPoly zgcd(const ZPoly& a, const ZPoly& b);

// Full gcd including integer content; zero inputs allowed.
ZPoly zgcd_full(const ZPoly& a, const ZPoly& b) {
  if (a.zero()) return zprimitive(b).zero() ? ZPoly{} : zscale(zprimitive(b), int_content(b));
  if (b.zero()) return zscale(zprimitive(a), int_content(a));
  Integer ca = int_content(a), cb = int_content(b), c;
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  return zscale(zgcd(zprimitive(a), zprimitive(b)), c);
}

ZPoly content_in(const ZPoly& p, int v) {
  ZPoly g;
  for (auto& c : zcoeffs(p, v)) {
    if (c.zero()) continue;
    g = zgcd_full(g, c);
    if (g.constant() && !g.zero() && abs(g.t[0].second) == 1) break;
  }
  return zprimitive(g);
}

ZPoly prem(const ZPoly& a, const ZPoly& b, int v) {
  unsigned db = zdeg(b, v);
  auto cb = zcoeffs(b, v);
  ZPoly lcb = cb.back();
  ZPoly r = a;
  int steps = int(zdeg(a, v)) - int(db) + 1;
  while (!r.zero() && zdeg(r, v) >= db) {
    unsigned dr = zdeg(r, v);
    ZPoly lcr = zcoeffs(r, v).back();
    ZPoly t = zmul(lcr, b);
    t = zscale(t, 1, Monomial::var(v, dr - db));
    r = zsub(zmul(lcb, r), t);
    --steps;
  }
  for (; steps > 0; --steps) r = zmul(lcb, r);
  return r;
}

ZPoly prs_gcd(ZPoly a, ZPoly b, int v) {
  ZPoly ca = content_in(a, v), cb = content_in(b, v);
  ZPoly c = zgcd(ca, cb);
  a = zexact(a, ca);
  b = zexact(b, cb);
  if (zdeg(a, v) < zdeg(b, v)) std::swap(a, b);
  while (true) {
    ZPoly r = prem(a, b, v);
    if (r.zero()) break;
    if (zdeg(r, v) == 0) {
      b = zconst(1);
      break;
    }
    a = b;
    b = zexact(r, content_in(r, v));
  }
  b = zexact(b, content_in(b, v));
  return zprimitive(zmul(b, c));
}

std::optional<ZPoly> heugcd(const ZPoly& a, const ZPoly& b, int v) {
  Integer na = max_norm(a), nb = max_norm(b);
  Integer xi = 2 * (na < nb ? na : nb) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    ZPoly ia = zeval(a, v, xi), ib = zeval(b, v, xi);
    if (!ia.zero() && !ib.zero()) {
      ZPoly h = zgcd_full(ia, ib);
      ZPoly g = zprimitive(zinterp(h, v, xi));
      if (!g.zero() && zdivide(a, g) && zdivide(b, g)) return g;
      auto cfa = zdivide(ia, h);
      if (cfa) {
        ZPoly ca = zinterp(*cfa, v, xi);
        if (!ca.zero()) {
          auto g2 = zdivide(a, ca);
          if (g2 && zdivide(b, zprimitive(*g2))) return zprimitive(*g2);
        }
      }
    }
    Integer s = sqrt(sqrt(xi));
    xi = xi * 73794 * s / 27011;
  }
  return std::nullopt;
}

// gcd of primitive nonzero polynomials; primitive result.
ZPoly zgcd(const ZPoly& a0, const ZPoly& b0) {
  if (a0.zero()) return zprimitive(b0);
  if (b0.zero()) return zprimitive(a0);
  Monomial ma = zmono_content(a0), mb = zmono_content(b0);
  Monomial mg = Monomial::gcd(ma, mb);
  ZPoly a = zprimitive(zscale(a0, 1)), b = zprimitive(zscale(b0, 1));
  for (auto& [m, c] : a.t) m = m / ma;
  for (auto& [m, c] : b.t) m = m / mb;
  while (true) {
    if (a.constant() || b.constant()) return zconst(1, mg);
    unsigned ua = used_mask(a), ub = used_mask(b);
    if (ua == ub) break;
    for (int v = 0; v < Monomial::kMaxVars; ++v) {
      unsigned bit = 1u << v;
      if ((ua & bit) && !(ub & bit)) {
        a = content_in(a, v);
        break;
      }
      if ((ub & bit) && !(ua & bit)) {
        b = content_in(b, v);
        break;
      }
    }
  }
  unsigned used = used_mask(a);
  int v = 0;
  for (int i = 0; i < Monomial::kMaxVars; ++i)
    if (used & (1u << i)) v = i;
  ZPoly g;
  if (auto h = heugcd(a, b, v))
    g = *h;
  else
    g = prs_gcd(a, b, v);
  return zscale(g, 1, mg);
}

}  // namespace

std::optional<Poly> divide_exact(const Poly& a0, const Poly& b0) {
  auto [a, b] = unify(a0, b0);
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return a;
  if (b.is_constant()) return a * Rational(1 / b.leading_coeff());
  for (int v = 0; v < a.nvars(); ++v)
    if (b.degree(v) > a.degree(v) || b.low_degree(v) > a.low_degree(v)) return std::nullopt;
  std::map<Monomial, Rational, std::greater<Monomial>> r;
  for (auto& [m, c] : a.terms()) r.emplace(m, c);
  Poly::Terms q;
  const Monomial lb = b.leading_monomial();
  const Rational inv = 1 / b.leading_coeff();
  std::vector<unsigned> da(a.nvars()), db(a.nvars());
  for (int v = 0; v < a.nvars(); ++v) da[v] = a.degree(v), db[v] = b.degree(v);
  Rational qc;
  while (!r.empty()) {
    auto it = r.begin();
    if (!lb.divides(it->first)) return std::nullopt;
    Monomial qm = it->first / lb;
    for (int v = 0; v < a.nvars(); ++v)
      if (qm[v] + db[v] > da[v]) return std::nullopt;
    qc = it->second * inv;
    for (auto& [m, c] : b.terms()) {
      Monomial k = m * qm;
      auto f = r.find(k);
      if (f == r.end()) {
        r.emplace(k, -c * qc);
      } else {
        f->second -= c * qc;
        if (f->second == 0) r.erase(f);
      }
    }
    q.emplace_back(qm, qc);
  }
  return Poly(a.vars_ptr(), std::move(q));
}

Rational content(const Poly& p) {
  if (p.is_zero()) return 0;
  Integer num = 0, den = 1;
  for (auto& [m, c] : p.terms()) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational r(num, den);
  r.canonicalize();
  if (p.leading_coeff() < 0) r = -r;
  return r;
}

Poly primitive_part(const Poly& p) {
  if (p.is_zero()) return p;
  return p * Rational(1 / content(p));
}

Poly gcd(const Poly& a0, const Poly& b0) {
  auto [a, b] = unify(a0, b0);
  if (a.is_zero() && b.is_zero()) return a;
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  ZPoly g = zgcd(to_z(primitive_part(a)), to_z(primitive_part(b)));
  return to_q(g, a.vars_ptr());
}

std::vector<Poly> squarefree_decomposition(const Poly& p, int var) {
  // Yun's algorithm in the given variable.
  std::vector<Poly> out;
  if (p.is_zero() || p.degree(var) == 0) return out;
  Poly f = primitive_part(p);
  Poly df = f.derivative(var);
  Poly a = gcd(f, df);
  Poly b = *divide_exact(f, a);
  Poly c = *divide_exact(df, a);
  Poly d = c - b.derivative(var);
  while (b.degree(var) > 0) {
    Poly g = gcd(b, d);
    out.push_back(g);
    b = *divide_exact(b, g);
    c = *divide_exact(d, g);
    d = c - b.derivative(var);
  }
  while (!out.empty() && out.back().degree(var) == 0) out.pop_back();
  for (auto& g : out)
    if (g.degree(var) == 0) g = Poly(p.vars_ptr(), Rational(1));
  return out;
}

unsigned multiplicity(const Poly& p, const Poly& f) {
  if (f.is_constant()) throw std::invalid_argument("multiplicity of a constant");
  if (p.is_zero()) throw std::invalid_argument("multiplicity in zero polynomial");
  unsigned k = 0;
  Poly q = p;
  while (auto r = divide_exact(q, f)) {
    q = *r;
    ++k;
  }
  return k;
}

}  // namespace k3lab
