#include "k3lab/fibrations.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "k3lab/parse.hpp"

namespace k3lab {

namespace {

struct ModelText {
  const char* base;
  bool monic;  // leading x^3 instead of 4x^3
  const char* c2;
  const char* c1;
  const char* c0;
};

const ModelText kModels[5] = {
    {"z", false, "lambda^2 + 2*lambda*z + z^2 + 2*lambda*z^2 + 2*z^3 + z^4", "-2*lambda*mu*z - 2*mu*z^2 - 2*mu*z^3",
     "mu^2*z^2"},
    {"x1", true, "mu^2 + 2*mu*x1 + x1^2 - 4*x1^3", "-8*lambda*mu*x1^3 - 8*lambda*x1^4", "16*lambda^2*x1^6"},
    {"y", true, "-4*lambda*y + y^2 + 2*y^3 + y^4", "-8*mu*y^3 - 8*mu*y^4", "16*mu^2*y^4"},
    {"z", true, "mu^2 + 2*mu*z + z^2 + 2*mu*z^2 + 2*z^3 + z^4", "-8*lambda*mu*z^3 - 8*lambda*z^4 - 8*lambda*z^5",
     "16*lambda^2*z^6"},
    {"x1", true, "lambda^2 + 2*lambda*x1 + x1^2 - 4*mu*x1^2 - 4*x1^3", "16*mu*x1^5", "0"},
};

const char* kLocus[4] = {
    "lambda^2*(4*lambda-1)^3 - 2*(2+25*lambda*(20*lambda-1))*mu - 3125*mu^2",
    "729*lambda^2 - 54*lambda*(27*mu-1) + (1+27*mu)^2",
    "lambda^2*(1+27*lambda)^2 - 2*lambda*mu*(1+189*lambda) + (1+576*lambda)*mu^2 - 256*mu^3",
    "729*lambda^2 - (4*mu-1)^3 + 54*lambda*(1+12*mu)",
};

const ModelText& model_text(int j, Fibration which) {
  if (j < 0 || j > 3) throw std::out_of_range("unknown family " + std::to_string(j));
  if (j == 3 && which == Fibration::Alternate) return kModels[4];
  return kModels[j];
}

Poly flip_poly(const Poly& p, const std::string& base, unsigned bound) {
  int v = p.var_index(base);
  if (p.degree(v) > bound)
    throw std::domain_error("degree " + std::to_string(p.degree(v)) + " exceeds chart bound " + std::to_string(bound));
  return p.reverse(v, bound);
}

Poly specialize(const Poly& p, const Rational& l0, const Rational& m0) {
  Poly q = p.evaluate(p.var_index("lambda"), l0);
  return q.evaluate(q.var_index("mu"), m0);
}

constexpr int kInfiniteOrder = 1 << 20;

int valuation(const Poly& f, const Poly& factor) {
  if (f.is_zero()) return kInfiniteOrder;
  return int(multiplicity(f, factor));
}

// Split a square-free P by the order of vanishing of f at its roots.
std::vector<std::pair<Poly, int>> split_by_order(const Poly& P, const Poly& f, int var) {
  std::vector<std::pair<Poly, int>> out;
  if (f.is_zero()) return {{P, kInfiniteOrder}};
  Poly cur = P, deriv = f;
  for (int k = 0; P.degree(var) > 0; ++k) {
    Poly next = gcd(cur, deriv);
    Poly exact = *divide_exact(cur, next);
    if (exact.degree(var) > 0) out.emplace_back(primitive_part(exact), k);
    if (next.degree(var) == 0) break;
    cur = next;
    deriv = deriv.derivative(var);
  }
  return out;
}

}  // namespace

VarList fibration_vars(const std::string& base) { return {base, "lambda", "mu"}; }

QuarticModel family_model(int j, Chart chart, Fibration which) {
  const ModelText& t = model_text(j, which);
  VarList vars = fibration_vars(t.base);
  QuarticModel q{t.base, parse_poly(t.c2, vars), parse_poly(t.c1, vars), parse_poly(t.c0, vars), Chart::Finite};
  if (t.monic) {
    // (2y)^2 = 4x^3 + 4a x^2 + 4b x + 4c
    q.c2 *= Rational(4);
    q.c1 *= Rational(4);
    q.c0 *= Rational(4);
  }
  if (chart == Chart::Infinite) {
    q.c2 = flip_poly(q.c2, q.base, 4);
    q.c1 = flip_poly(q.c1, q.base, 8);
    q.c0 = flip_poly(q.c0, q.base, 12);
    q.chart = Chart::Infinite;
  }
  return q;
}

WeierstrassModel to_weierstrass(const QuarticModel& q) {
  // x -> x - c2/12 removes the quadratic term.
  WeierstrassModel w;
  w.base = q.base;
  w.chart = q.chart;
  w.g2 = q.c2 * q.c2 * Rational(1, 12) - q.c1;
  w.g3 = q.c1 * q.c2 * Rational(1, 12) - q.c2.pow(3) * Rational(1, 216) - q.c0;
  int v = w.g2.var_index(q.base);
  if (w.g2.degree(v) > 8 || w.g3.degree(v) > 12)
    throw std::domain_error("Weierstrass coefficients exceed K3 degree bounds");
  return w;
}

WeierstrassModel chart_flip(const WeierstrassModel& w) {
  WeierstrassModel r = w;
  r.g2 = flip_poly(w.g2, w.base, 8);
  r.g3 = flip_poly(w.g3, w.base, 12);
  r.chart = w.chart == Chart::Finite ? Chart::Infinite : Chart::Finite;
  return r;
}

Poly discriminant(const WeierstrassModel& w) { return w.g2.pow(3) - w.g3.pow(2) * Rational(27); }

RationalFunction j_invariant(const WeierstrassModel& w) {
  Poly d = discriminant(w);
  if (d.is_zero()) throw std::domain_error("identically singular model");
  return RationalFunction(w.g2.pow(3), d);
}

int FibreType::euler() const {
  switch (kind) {
    case I: return n;
    case Istar: return n + 6;
    case II: return 2;
    case III: return 3;
    case IV: return 4;
    case IVstar: return 8;
    case IIIstar: return 9;
    case IIstar: return 10;
  }
  return 0;
}

int FibreType::components() const {
  switch (kind) {
    case I: return n;
    case Istar: return n + 5;
    case II: return 1;
    case III: return 2;
    case IV: return 3;
    case IVstar: return 7;
    case IIIstar: return 8;
    case IIstar: return 9;
  }
  return 0;
}

std::string FibreType::str() const {
  switch (kind) {
    case I: return "I" + std::to_string(n);
    case Istar: return "I*" + std::to_string(n);
    case II: return "II";
    case III: return "III";
    case IV: return "IV";
    case IVstar: return "IV*";
    case IIIstar: return "III*";
    case IIstar: return "II*";
  }
  return "?";
}

std::string FibreLocation::str() const {
  switch (kind) {
    case Root: return to_string(root);
    case Infinity: return "infinity";
    case Factor: return factor.str();
  }
  return "?";
}

int FibreTable::euler_sum() const {
  int s = 0;
  for (auto& e : entries) s += e.type.euler() * e.location.count;
  return s;
}

std::map<std::string, int> FibreTable::counts() const {
  std::map<std::string, int> out;
  for (auto& e : entries) out[e.type.str()] += e.location.count;
  return out;
}

std::string FibreTable::summary() const {
  // Merge by type, order by Euler number (descending), then name.
  std::map<std::string, std::pair<int, int>> counts;  // name -> (euler, count)
  for (auto& e : entries) {
    auto& c = counts[e.type.str()];
    c.first = e.type.euler();
    c.second += e.location.count;
  }
  std::vector<std::pair<std::string, std::pair<int, int>>> v(counts.begin(), counts.end());
  std::stable_sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.second.first > b.second.first; });
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << " + ";
    if (v[i].second.second > 1) os << v[i].second.second;
    os << v[i].first;
  }
  return os.str();
}

FibreType kodaira_type(int v2, int v3, int vd) {
  while (v2 >= 4 && v3 >= 6 && vd >= 12) v2 -= 4, v3 -= 6, vd -= 12;
  if (v2 >= 4 && v3 >= 6) throw std::domain_error("non-minimal model");
  using K = FibreType;
  if (vd <= 0) throw std::domain_error("location is not a root of the discriminant");
  if (v2 == 0) return {K::I, vd};
  if (vd == 2 && v3 == 1) return {K::II, 0};
  if (vd == 3 && v2 == 1) return {K::III, 0};
  if (vd == 4 && v3 == 2) return {K::IV, 0};
  if (v2 == 2 && v3 == 3 && vd >= 6) return {K::Istar, vd - 6};
  if (v2 >= 2 && v3 >= 3 && vd == 6) return {K::Istar, 0};
  if (v3 == 4 && vd == 8) return {K::IVstar, 0};
  if (v2 == 3 && vd == 9) return {K::IIIstar, 0};
  if (v3 == 5 && vd == 10) return {K::IIstar, 0};
  throw std::domain_error("valuations (" + std::to_string(v2) + "," + std::to_string(v3) + "," + std::to_string(vd) +
                          ") match no Kodaira type");
}

FibreType classify_fibre(const WeierstrassModel& w0, const FibreLocation& where, const Rational& l0,
                         const Rational& m0) {
  WeierstrassModel w = w0;
  FibreLocation loc = where;
  if (loc.kind == FibreLocation::Infinity) {
    w = chart_flip(w0);
    loc.kind = FibreLocation::Root;
    loc.root = 0;
  }
  Poly g2 = specialize(w.g2, l0, m0), g3 = specialize(w.g3, l0, m0);
  Poly d = g2.pow(3) - g3.pow(2) * Rational(27);
  VarList vars = fibration_vars(w.base);
  Poly factor = loc.kind == FibreLocation::Root ? Poly::variable(vars, w.base) - Poly(vars, loc.root) : loc.factor;
  if (d.is_zero()) throw std::domain_error("specialized model is singular everywhere");
  int vd = valuation(d, factor);
  if (vd == 0) throw std::domain_error("location is not a root of the discriminant");
  return kodaira_type(valuation(g2, factor), valuation(g3, factor), vd);
}

std::vector<Poly> singular_locus(int j) {
  if (j < 0 || j > 3) throw std::out_of_range("unknown family " + std::to_string(j));
  VarList lm{"lambda", "mu"};
  return {Poly::variable(lm, "lambda"), Poly::variable(lm, "mu"), parse_poly(kLocus[j], lm)};
}

bool in_parameter_domain(int j, const Rational& l0, const Rational& m0) {
  for (auto& f : singular_locus(j))
    if (f.evaluate({l0, m0}) == 0) return false;
  return true;
}

FibreTable fibre_table(int j, const Rational& l0, const Rational& m0, Fibration which) {
  if (!in_parameter_domain(j, l0, m0))
    throw std::domain_error("(" + to_string(l0) + ", " + to_string(m0) + ") lies on the excluded locus");
  WeierstrassModel w = to_weierstrass(family_model(j, Chart::Finite, which));
  const int v = 0;  // base variable index
  Poly g2 = specialize(w.g2, l0, m0), g3 = specialize(w.g3, l0, m0);
  Poly d = g2.pow(3) - g3.pow(2) * Rational(27);
  FibreTable table;
  auto sqf = squarefree_decomposition(d, v);
  for (std::size_t e = 0; e < sqf.size(); ++e) {
    if (sqf[e].degree(v) == 0) continue;
    for (auto& [p2, v2] : split_by_order(sqf[e], g2, v))
      for (auto& [p3, v3] : split_by_order(p2, g3, v)) {
        FibreEntry entry;
        entry.type = kodaira_type(v2, v3, int(e + 1));
        unsigned deg = p3.degree(v);
        if (deg == 1) {
          auto c = p3.coefficients(v);
          entry.location.kind = FibreLocation::Root;
          entry.location.root = -c[0].constant_term() / c[1].constant_term();
        } else {
          entry.location.kind = FibreLocation::Factor;
          entry.location.factor = p3;
          entry.location.count = int(deg);
        }
        table.entries.push_back(entry);
      }
  }
  WeierstrassModel f = chart_flip(w);
  Poly h2 = specialize(f.g2, l0, m0), h3 = specialize(f.g3, l0, m0);
  Poly dinf = h2.pow(3) - h3.pow(2) * Rational(27);
  int vd = int(dinf.low_degree(v));
  if (vd > 0) {
    FibreEntry entry;
    entry.location.kind = FibreLocation::Infinity;
    int v2 = h2.is_zero() ? kInfiniteOrder : int(h2.low_degree(v));
    int v3 = h3.is_zero() ? kInfiniteOrder : int(h3.low_degree(v));
    entry.type = kodaira_type(v2, v3, vd);
    table.entries.push_back(entry);
  }
  return table;
}

Poly affine_surface(int j, const Rational& l0, const Rational& m0) {
  static const char* kSurf[4] = {
      "X*Y*Z^2*(X+Y+Z+1) + lambda*X*Y*Z + mu",
      "X*Y*Z*(X+Y+Z+1) + lambda*X + mu*Y",
      "X*Y*Z*(X+Y+Z+1) + lambda*X + mu",
      "X*Y*Z*(X+Y+Z+1) + lambda*Z + mu*X*Y",
  };
  if (j < 0 || j > 3) throw std::out_of_range("unknown family " + std::to_string(j));
  std::string s = kSurf[j];
  VarList vars{"X", "Y", "Z"};
  // Parameters enter as rational constants.
  auto replace = [&](const std::string& name, const Rational& q) {
    std::string rep = "(" + to_string(q) + ")";
    for (std::size_t pos = s.find(name); pos != std::string::npos; pos = s.find(name, pos + rep.size()))
      s.replace(pos, name.size(), rep);
  };
  replace("lambda", l0);
  replace("mu", m0);
  return parse_poly(s, vars);
}

bool verify_birational_map(int j, Fibration which, const Rational& l0, const Rational& m0) {
  // Model coordinates: u (fibre x), v (fibre y), t (base).
  struct MapText {
    const char *X, *Y, *Z;
  };
  static const MapText kMaps[5] = {
      {"-mu/u", "(-lambda*u - v + mu*t - u*t - u*t^2)/(2*u*t)", "t"},
      {"-2*t^2*u/(-4*lambda*t^3 + mu*u + t*u + v)", "u^2/(2*t*(-4*lambda*t^3 + mu*u + t*u + v))",
       "-(-4*lambda*t^3 + mu*u + t*u + v)/(2*t*u)"},
      {"u^2/(2*t*(u*t - 4*mu*t^2 + u*t^2 + v))", "t", "-(u*t - 4*mu*t^2 + u*t^2 + v)/(2*u*t)"},
      {"-4*lambda*t^2/u", "(-mu*u - v - u*t - u*t^2 + 4*lambda*t^3)/(2*u*t)", "t"},
      {"2*t^2*(4*mu*t^2 - u)/(v + lambda*u + t*u)", "(v + lambda*u + t*u)/(2*t*(4*mu*t^2 - u))",
       "-u*(4*mu*t^2 - u)/(2*t*(v + lambda*u + t*u))"},
  };
  const ModelText& mt = model_text(j, which);
  const MapText& m = kMaps[(j == 3 && which == Fibration::Alternate) ? 4 : j];
  VarList uvt{"u", "v", "t"};
  auto inst = [&](std::string s) {
    auto replace = [&](const std::string& name, const Rational& q) {
      std::string rep = "(" + to_string(q) + ")";
      for (std::size_t pos = s.find(name); pos != std::string::npos; pos = s.find(name, pos + rep.size()))
        s.replace(pos, name.size(), rep);
    };
    replace("lambda", l0);
    replace("mu", m0);
    return s;
  };
  auto rebase = [&](std::string s) {
    // model coefficient text uses its own base variable name
    std::string b = mt.base;
    std::string out;
    for (std::size_t i = 0; i < s.size();) {
      bool boundary = i == 0 || !std::isalnum(static_cast<unsigned char>(s[i - 1]));
      if (boundary && s.compare(i, b.size(), b) == 0 &&
          (i + b.size() == s.size() || !std::isalnum(static_cast<unsigned char>(s[i + b.size()])))) {
        out += "t";
        i += b.size();
      } else {
        out += s[i++];
      }
    }
    return out;
  };
  std::string lead = mt.monic ? "u^3" : "4*u^3";
  std::string rel = "v^2 - (" + lead + " + (" + rebase(mt.c2) + ")*u^2 + (" + rebase(mt.c1) + ")*u + (" +
                    rebase(mt.c0) + "))";
  Poly relation = parse_poly(inst(rel), uvt);
  std::map<std::string, RationalFunction> sub{
      {"X", parse_rf(inst(m.X), uvt)}, {"Y", parse_rf(inst(m.Y), uvt)}, {"Z", parse_rf(inst(m.Z), uvt)}};
  RationalFunction pulled = substitute(affine_surface(j, l0, m0), sub);
  if (pulled.is_zero()) return true;
  return divide_exact(pulled.num(), relation).has_value();
}

}  // namespace k3lab
