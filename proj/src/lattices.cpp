#include "k3lab/lattices.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "k3lab/linalg.hpp"

namespace k3lab {

GramMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  GramMatrix m(Eigen::Index(rows.size()), Eigen::Index(rows.begin()->size()));
  Eigen::Index i = 0;
  for (auto& r : rows) {
    Eigen::Index j = 0;
    for (long x : r) m(i, j++) = Integer(x);
    ++i;
  }
  return m;
}

GramMatrix direct_sum(const std::vector<GramMatrix>& blocks) {
  Eigen::Index n = 0;
  for (auto& b : blocks) n += b.rows();
  GramMatrix m = GramMatrix::Constant(n, n, Integer(0));
  Eigen::Index o = 0;
  for (auto& b : blocks) {
    m.block(o, o, b.rows(), b.cols()) = b;
    o += b.rows();
  }
  return m;
}

namespace {

GramMatrix chain(int n) {
  GramMatrix m = GramMatrix::Constant(n, n, Integer(0));
  for (int i = 0; i < n; ++i) {
    m(i, i) = -2;
    if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = 1;
  }
  return m;
}

GramMatrix e8() {
  // branch node 5 with arms 4-3-2-1, 6, and 7-8
  GramMatrix m = chain(8);
  m(5, 6) = m(6, 5) = 0;
  m(4, 6) = m(6, 4) = 1;
  return m;
}

struct Unit {
  int i, j;  // 1-based; i == j is a diagonal correction
  int value;
};

const std::vector<Unit> kCorrections[4] = {
    {{17, 17, 2}, {6, 7, -1}, {5, 7, 1}, {14, 15, -1}, {13, 15, 1}, {8, 9, -1}, {16, 17, -1}, {6, 17, 1},
     {8, 16, 1}, {14, 17, 1}},
    {{8, 9, -1}, {14, 15, -1}, {13, 15, 1}, {3, 17, 1}, {14, 17, 1}, {16, 17, -1}, {16, 18, 1}, {15, 16, -1},
     {18, 18, 2}},
    // the printed pair (E_{14,17} + E_{17,4}) is read as the symmetric (14, 17)
    {{10, 11, -1}, {15, 16, -1}, {4, 17, 1}, {14, 17, 1}, {14, 15, -1}, {13, 15, 1}, {16, 17, -1}, {16, 18, 1},
     {18, 18, 2}},
    {{18, 18, 2}, {8, 9, -1}, {14, 15, -1}, {12, 13, -1}, {3, 16, 1}, {6, 17, 1}, {11, 16, 1}, {13, 17, 1},
     {15, 16, -1}, {15, 18, 1}, {16, 18, 1}, {16, 17, -1}},
};

// Columns of a certificate: r<i> is the i-th unit vector, v<i> a printed vector.
struct CertText {
  std::vector<std::string> columns;
  std::map<std::string, std::vector<long>> vectors;
};

const CertText& cert_text(int j) {
  static const CertText kCerts[4] = {
      {{"r1", "r2", "r3", "r4", "r5", "r6", "r7", "r8", "r9", "r10", "r11", "r12", "r13", "r14", "r15", "v16", "v17",
        "v18"},
       {{"v16", {-1, -2, -3, -4, -5, -2, -4, -3, -1, -2, -3, -4, -5, -2, -4, -2, 1, 1}},
        {"v17", {5, 10, 15, 20, 25, 13, 17, 9, 1, 2, 3, 4, 5, 3, 3, 1, 1, -3}},
        {"v18", {-2, -4, -6, -8, -10, -6, -6, -2, 0, 0, 0, 0, 0, -1, 1, 2, -2, 1}}}},
      {{"r7", "r6", "r5", "r4", "r3", "r17", "r2", "r1", "r9", "r10", "r11", "r12", "r13", "r15", "v15", "v16", "v17",
        "v18"},
       {{"v15", {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, -1, 0, -1}},
        {"v16", {11, 22, 33, 26, 19, 12, 5, -2, 2, 4, 6, 8, 10, 7, 5, 1, 18, -4}},
        {"v17", {8, 16, 24, 19, 14, 9, 4, -1, 2, 4, 6, 8, 10, 7, 5, -1, 13, -5}},
        {"v18", {91, 182, 273, 214, 155, 96, 37, -22, 18, 36, 54, 72, 90, 63, 45, 0, 150, -36}}}},
      {{"r3", "r4", "r17", "r14", "r13", "r15", "r12", "r11", "r10", "r9", "r8", "r7", "r6", "v14", "v15", "r16",
        "v17", "v18"},
       {{"v14", {5, 4, 15, 26, 13, 10, 8, 6, 4, 2, 12, 24, 36, 30, 18, -4, 24, -8}},
        {"v15", {1, -2, 3, 8, 1, 0, 0, 0, 0, 0, 6, 12, 18, 15, 9, 0, 12, 1}},
        {"v17", {56, 13, 162, 311, 120, 100, 80, 60, 40, 20, 170, 340, 510, 425, 255, -28, 340, -56}},
        {"v18", {27, 6, 80, 154, 60, 50, 40, 30, 20, 10, 84, 168, 252, 210, 126, -14, 168, -28}}}},
      {{"r1", "r2", "r3", "r16", "r11", "r12", "r10", "r9", "v9", "r14", "r13", "r17", "r6", "r5", "r7", "r8", "v17",
        "v18"},
       {{"v9", {28, 56, 84, 27, 21, 15, 10, 5, 34, 68, 102, 51, -1, -1, 1, 85, -1, -16}},
        {"v17", {5, 10, 15, 5, 4, 3, 2, 1, 6, 12, 18, 9, 0, 0, 0, 15, 0, -3}},
        {"v18", {468, 936, 1404, 432, 378, 324, 216, 108, 576, 1152, 1728, 864, 36, 18, 35, 1440, 54, -252}}}},
  };
  if (j < 0 || j > 3) throw std::out_of_range("unknown family " + std::to_string(j));
  return kCerts[j];
}

}  // namespace

GramMatrix build_standard(const std::string& name) {
  if (name == "U") return int_matrix({{0, 1}, {1, 0}});
  if (name == "E8") return e8();
  if (name == "K3") {
    GramMatrix u = build_standard("U");
    return direct_sum({e8(), e8(), u, u, u});
  }
  if (name.size() > 1 && name[0] == 'A') {
    int n = std::stoi(name.substr(1));
    if (n < 1) throw std::invalid_argument("bad lattice name " + name);
    return chain(n);
  }
  throw std::invalid_argument("unknown standard lattice " + name);
}

GramMatrix binary_part(int j) {
  switch (j) {
    case 0: return int_matrix({{2, 1}, {1, -2}});
    case 1: return int_matrix({{0, 3}, {3, 0}});
    case 2: return int_matrix({{0, 3}, {3, 2}});
    case 3: return int_matrix({{0, 3}, {3, -2}});
  }
  throw std::out_of_range("unknown family " + std::to_string(j));
}

GramMatrix neron_severi_form(int j) { return direct_sum({e8(), e8(), binary_part(j)}); }

GramMatrix transcendental_form(int j) {
  static const GramMatrix b[4] = {int_matrix({{2, 1}, {1, -2}}), int_matrix({{0, 3}, {3, 0}}),
                                  int_matrix({{0, 3}, {3, -2}}), int_matrix({{0, 3}, {3, 2}})};
  if (j < 0 || j > 3) throw std::out_of_range("unknown family " + std::to_string(j));
  return direct_sum({build_standard("U"), b[j]});
}

GramMatrix build_M(int j) {
  if (j < 0 || j > 3) throw std::out_of_range("unknown family " + std::to_string(j));
  GramMatrix m = chain(18);
  for (const Unit& u : kCorrections[j]) {
    m(u.i - 1, u.j - 1) += u.value;
    if (u.i != u.j) m(u.j - 1, u.i - 1) += u.value;
  }
  return m;
}

UnimodularMap certificate(int j) {
  const CertText& t = cert_text(j);
  UnimodularMap u = UnimodularMap::Constant(18, 18, Integer(0));
  for (int c = 0; c < 18; ++c) {
    const std::string& col = t.columns[c];
    if (col[0] == 'r') {
      u(std::stoi(col.substr(1)) - 1, c) = 1;
    } else {
      const auto& v = t.vectors.at(col);
      for (int r = 0; r < 18; ++r) u(r, c) = Integer(v[r]);
    }
  }
  return u;
}

VarList symbol_vars() { return {"k"}; }

SymbolicGram symbolic_gram(const LatticeConfig& c) {
  VarList k = symbol_vars();
  enum Kind { Component, Section, Fibre };
  struct Where {
    Kind kind;
    int fibre = -1, index = -1;
  };
  std::map<std::string, Where> where;
  for (int f = 0; f < int(c.fibres.size()); ++f)
    for (int i = 0; i < int(c.fibres[f].names.size()); ++i) where[c.fibres[f].names[i]] = {Component, f, i};
  for (auto& s : c.sections) where[s] = {Section};
  where["F"] = {Fibre};

  auto adjacent = [&](int f, int a, int b) -> int {
    const FibreSpec& fs = c.fibres[f];
    int n = int(fs.names.size());
    if (a == b) return -2;
    if (fs.type.kind == FibreType::I) {
      if (n == 2) return 2;
      return ((a + 1) % n == b || (b + 1) % n == a) ? 1 : 0;
    }
    if (fs.type.kind == FibreType::Istar) {
      // c0, c1, b0..bb, c2, c3
      int bb = fs.type.n;
      auto node = [&](int i) { return i; };
      auto edge = [&](int x, int y) {
        if (x > y) std::swap(x, y);
        if (x <= 1) return y == 2;                         // c0, c1 hang on b0
        if (y >= 3 + bb) return x == 2 + bb && y <= 4 + bb;  // c2, c3 hang on bb
        return y == x + 1;
      };
      return edge(node(a), node(b)) ? 1 : 0;
    }
    throw std::invalid_argument("fibre type " + fs.type.str() + " not supported in configurations");
  };
  auto meets = [&](const std::string& s, const std::string& comp) {
    auto it = c.meets.find(s);
    if (it == c.meets.end()) return false;
    return std::find(it->second.begin(), it->second.end(), comp) != it->second.end();
  };
  auto section_meets = [&](const std::string& s, int f, int i) {
    // a section meets exactly one component of each fibre; identity by default
    for (int x = 0; x < int(c.fibres[f].names.size()); ++x)
      if (meets(s, c.fibres[f].names[x])) return x == i;
    return i == 0;
  };
  auto pair = [&](const std::string& a, const std::string& b) -> Poly {
    const Where &wa = where.at(a), &wb = where.at(b);
    if (wa.kind == Fibre && wb.kind == Fibre) return Poly(k);
    if (wa.kind == Fibre || wb.kind == Fibre) {
      const Where& o = wa.kind == Fibre ? wb : wa;
      return Poly(k, Rational(o.kind == Section ? 1 : 0));
    }
    if (wa.kind == Component && wb.kind == Component)
      return Poly(k, Rational(wa.fibre == wb.fibre ? adjacent(wa.fibre, wa.index, wb.index) : 0));
    if (wa.kind == Section && wb.kind == Section) {
      if (a == b) return Poly(k, Rational(-2));
      auto it = c.pairings.find({a, b});
      if (it == c.pairings.end()) it = c.pairings.find({b, a});
      return it == c.pairings.end() ? Poly(k) : it->second.to_vars(k);
    }
    const std::string& s = wa.kind == Section ? a : b;
    const Where& comp = wa.kind == Section ? wb : wa;
    return Poly(k, Rational(section_meets(s, comp.fibre, comp.index) ? 1 : 0));
  };
  for (auto& [s, comps] : c.meets)
    for (auto& comp : comps)
      if (!where.count(comp) || where[comp].kind != Component)
        throw std::invalid_argument("section " + s + " meets unknown component " + comp);
  int n = int(c.basis.size());
  SymbolicGram g(n, n);
  for (int i = 0; i < n; ++i) {
    if (!where.count(c.basis[i])) throw std::invalid_argument("unknown basis element " + c.basis[i]);
    for (int j = 0; j < n; ++j) g(i, j) = pair(c.basis[i], c.basis[j]);
  }
  return g;
}

GramMatrix gram(const LatticeConfig& c) {
  SymbolicGram s = symbolic_gram(c);
  GramMatrix g(s.rows(), s.cols());
  for (Eigen::Index i = 0; i < s.rows(); ++i)
    for (Eigen::Index j = 0; j < s.cols(); ++j) {
      if (!s(i, j).is_constant()) throw std::invalid_argument("configuration has symbolic pairings");
      Rational q = s(i, j).constant_term();
      g(i, j) = q.get_num();
    }
  return g;
}

Poly symbolic_det(const LatticeConfig& c) { return det(symbolic_gram(c)); }

namespace {

std::vector<std::string> names_In(const std::string& p, int n, bool split) {
  // identity p0, then p1.., with primed names running back when split
  std::vector<std::string> out{p + "0"};
  if (!split) {
    for (int i = 1; i < n; ++i) out.push_back(p + std::to_string(i));
    return out;
  }
  int half = (n - 1) / 2;
  for (int i = 1; i <= half; ++i) out.push_back(p + std::to_string(i));
  if (n % 2 == 0) out.push_back(p + "0p");
  for (int i = half; i >= 1; --i) out.push_back(p + std::to_string(i) + "p");
  return out;
}

std::vector<std::string> names_Istar(int b) {
  std::vector<std::string> out{"c0", "c1"};
  for (int i = 0; i <= b; ++i) out.push_back("b" + std::to_string(i));
  out.push_back("c2");
  out.push_back("c3");
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

LatticeConfig lattice_config(const std::string& name) {
  VarList k = symbol_vars();
  LatticeConfig c;
  auto In = [](int n, const std::string& p) { return FibreSpec{{FibreType::I, n}, names_In(p, n, true)}; };
  auto Is = [](int b) { return FibreSpec{{FibreType::Istar, b}, names_Istar(b)}; };
  if (name == "L0") {
    c.fibres = {In(3, "a"), In(15, "b")};
    c.sections = {"O", "Q", "R"};
    c.meets = {{"Q", {"a1", "b5"}}, {"R", {"a1p", "b5p"}}};
    c.basis = split("b1 b2 b3 b4 b5 Q b6 b7 b1p b2p b3p b4p b5p R b6p b7p F O");
    return c;
  }
  if (name == "L1" || name == "T1" || name == "T1bar" || name.rfind("L1tilde", 0) == 0) {
    c.fibres = {In(9, "a"), Is(3)};
    c.sections = {"O", "Q"};
    c.meets = {{"Q", {"a3", "c2"}}};
    std::string t = "a1 a2 a3 a4 a4p a3p a2p a1p c1 b0 b1 b2 b3 c2 c3 O";
    if (name == "L1") {
      c.basis = split(t + " Q F");
    } else if (name == "T1") {
      c.basis = split(t + " F");
    } else if (name == "T1bar") {
      // hypothetical 3-torsion section, (R0 . O) = k
      c.sections.push_back("R0");
      c.meets["R0"] = {"a3", "c0"};
      c.pairings[{"O", "R0"}] = Poly::variable(k, "k");
      c.basis = split(t + " F R0");
    } else {
      // hypothetical R1 with 3 R1 = Q
      std::map<std::string, std::string> at0{{"L1tilde_a1", "a1"}, {"L1tilde_a4", "a4"}, {"L1tilde_a7", "a2p"}};
      if (!at0.count(name)) throw std::invalid_argument("unknown lattice " + name);
      c.sections.push_back("R1");
      c.meets["R1"] = {at0[name], "c3"};
      c.basis = split(t + " Q F R1");
    }
    return c;
  }
  if (name == "L2" || name == "T2" || name == "L2tilde") {
    c.fibres = {In(11, "a"), Is(1)};
    c.sections = {"O", "Q"};
    c.meets = {{"Q", {"a4", "c2"}}};
    std::string t = "a1 a2 a3 a4 a5 a5p a4p a3p a2p a1p c1 b0 b1 c2 c3 O";
    if (name == "L2") c.basis = split(t + " Q F");
    if (name == "T2") c.basis = split(t + " F");
    if (name == "L2tilde") {
      c.sections.push_back("R1");
      c.meets["R1"] = {"a5", "c3"};
      c.basis = split(t + " Q F R1");
    }
    return c;
  }
  if (name == "L3") {
    FibreSpec d = In(9, "d"), e = In(9, "e");
    c.fibres = {d, e};
    c.sections = {"O", "Q0", "R0"};
    c.meets = {{"Q0", {"d3", "e3"}}, {"R0", {"d3p", "e3p"}}};
    c.basis = split("d1 d2 d3 d4 d4p d3p d2p d1p e1 e2 e3 e4 e3p e2p O Q0 R0 F");
    return c;
  }
  if (name == "L3prime" || name == "T3" || name.rfind("L3tilde", 0) == 0) {
    c.fibres = {In(10, "a"), Is(2)};
    c.sections = {"O", "Q"};
    c.meets = {{"Q", {"a2", "c2"}}};
    std::string t = "a1 a2 a3 a4 a0p a4p a3p a2p a1p c1 b0 b1 b2 c2 c3 O F";
    if (name == "L3prime") {
      c.basis = split(t + " Q");
    } else if (name == "T3") {
      c.basis = split(t);
    } else {
      int rq = name == "L3tilde_0" ? 0 : name == "L3tilde_1" ? 1 : -1;
      if (rq < 0) throw std::invalid_argument("unknown lattice " + name);
      c.sections.push_back("R1");
      c.meets["R1"] = {"a4", "c2"};
      c.pairings[{"Q", "R1"}] = Poly(k, Rational(rq));
      c.basis = split(t + " Q R1");
    }
    return c;
  }
  throw std::invalid_argument("unknown lattice " + name);
}

std::vector<std::string> lattice_config_names() {
  return {"L0",         "L1",         "L2",         "L3",      "L3prime",   "T1",       "T2",
          "T3",         "T1bar",      "L1tilde_a1", "L1tilde_a4", "L1tilde_a7", "L2tilde", "L3tilde_0",
          "L3tilde_1"};
}

Integer det_exact(const GramMatrix& g) {
  if (g.rows() != g.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  return det(g);
}

std::pair<int, int> signature(const GramMatrix& g) {
  int n = int(g.rows());
  QMatrix a = g.cast<Rational>();
  int pos = 0, neg = 0;
  for (int step = 0; step < n; ++step) {
    // symmetric pivot on the trailing block [step, n)
    int p = -1;
    for (int i = step; i < n && p < 0; ++i)
      if (a(i, i) != 0) p = i;
    if (p < 0) {
      int r = -1, s = -1;
      for (int i = step; i < n && r < 0; ++i)
        for (int j = i + 1; j < n; ++j)
          if (a(i, j) != 0) {
            r = i, s = j;
            break;
          }
      if (r < 0) throw std::domain_error("degenerate form");
      // e_r -> e_r + e_s gives a nonzero diagonal 2 a_rs
      for (int j = 0; j < n; ++j) a(r, j) += a(s, j);
      for (int i = 0; i < n; ++i) a(i, r) += a(i, s);
      p = r;
    }
    if (p != step) {
      a.row(p).swap(a.row(step));
      a.col(p).swap(a.col(step));
    }
    Rational d = a(step, step);
    (d > 0 ? pos : neg)++;
    for (int i = step + 1; i < n; ++i) {
      if (a(i, step) == 0) continue;
      Rational f = a(i, step) / d;
      for (int j = step; j < n; ++j) a(i, j) -= f * a(step, j);
    }
    for (int j = step + 1; j < n; ++j) a(step, j) = 0;
    for (int i = step + 1; i < n; ++i) a(i, step) = 0;
  }
  return {pos, neg};
}

bool verify_equivalence(const GramMatrix& m, const UnimodularMap& u, const GramMatrix& target) {
  if (m.rows() != u.rows() || u.cols() != target.cols() || u.rows() != u.cols()) return false;
  Integer d = det(u);
  if (abs(d) != 1) return false;
  return congruence<Integer>(u, m) == target;
}

std::vector<Integer> elementary_divisors(const IntMatrix& a0) {
  IntMatrix a = a0;
  int r = int(a.rows()), c = int(a.cols());
  std::vector<Integer> out;
  for (int t = 0; t < std::min(r, c); ++t) {
    // smallest nonzero entry of the trailing block as pivot
    for (;;) {
      int pi = -1, pj = -1;
      for (int i = t; i < r; ++i)
        for (int j = t; j < c; ++j)
          if (a(i, j) != 0 && (pi < 0 || abs(a(i, j)) < abs(a(pi, pj)))) pi = i, pj = j;
      if (pi < 0) return out;
      a.row(pi).swap(a.row(t));
      a.col(pj).swap(a.col(t));
      bool clean = true;
      for (int i = t + 1; i < r; ++i) {
        Integer q = a(i, t) / a(t, t);
        if (q != 0) a.row(i) -= (a.row(t) * q).eval();
        if (a(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < c; ++j) {
        Integer q = a(t, j) / a(t, t);
        if (q != 0) a.col(j) -= (a.col(t) * q).eval();
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // the pivot must divide the rest of the block
      int bi = -1;
      for (int i = t + 1; i < r && bi < 0; ++i)
        for (int j = t + 1; j < c; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bi = i;
            break;
          }
      if (bi < 0) break;
      a.row(t) += a.row(bi).eval();
    }
    out.push_back(abs(a(t, t)));
  }
  return out;
}

namespace {

Integer dot(const IntMatrix& a, int i, int j) {
  Integer s = 0;
  for (Eigen::Index r = 0; r < a.rows(); ++r) s += a(r, i) * a(r, j);
  return s;
}

// Pairwise size reduction of the columns in the Euclidean norm.
void size_reduce(IntMatrix& b) {
  int n = int(b.cols());
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        Integer nj = dot(b, j, j);
        if (nj == 0) continue;
        Integer num = dot(b, i, j);
        // nearest integer to num / nj
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), Integer(2 * num + nj).get_mpz_t(), Integer(2 * nj).get_mpz_t());
        if (q != 0) {
          b.col(i) -= (b.col(j) * q).eval();
          changed = true;
        }
      }
  }
}

}  // namespace

IntMatrix integer_kernel(const IntMatrix& a) {
  int r = int(a.rows()), c = int(a.cols());
  // column operations on [a; I]
  IntMatrix m(r + c, c);
  m.topRows(r) = a;
  m.bottomRows(c) = IntMatrix::Identity(c, c);
  int lead = 0;
  for (int i = 0; i < r && lead < c; ++i) {
    for (;;) {
      int p = -1;
      for (int j = lead; j < c; ++j)
        if (m(i, j) != 0 && (p < 0 || abs(m(i, j)) < abs(m(i, p)))) p = j;
      if (p < 0) break;
      m.col(p).swap(m.col(lead));
      bool done = true;
      for (int j = lead + 1; j < c; ++j) {
        if (m(i, j) == 0) continue;
        Integer q = m(i, j) / m(i, lead);
        m.col(j) -= (m.col(lead) * q).eval();
        if (m(i, j) != 0) done = false;
      }
      if (done) {
        ++lead;
        break;
      }
    }
  }
  IntMatrix k = m.bottomRows(c).rightCols(c - lead);
  size_reduce(k);
  return k;
}

Complement orthogonal_complement(const IntMatrix& embedding, const GramMatrix& ambient) {
  for (const Integer& d : elementary_divisors(embedding.transpose()))
    if (d != 1) throw std::domain_error("embedding is not primitive");
  if (Eigen::Index(elementary_divisors(embedding.transpose()).size()) != embedding.cols())
    throw std::domain_error("embedded vectors are dependent");
  IntMatrix pairing = mul<Integer>(IntMatrix(embedding.transpose()), ambient);
  Complement out;
  out.basis = integer_kernel(pairing);
  out.gram = congruence<Integer>(out.basis, ambient);
  return out;
}

namespace {

long ldot(const std::vector<long>& g, int n, const std::vector<long>& x, const std::vector<long>& y) {
  long s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += x[i] * g[i * n + j] * y[j];
  return s;
}

void for_each_vector(int n, int bound, const std::function<bool(const std::vector<long>&)>& f) {
  // enumeration by increasing sup norm; f returns true to stop
  std::vector<long> v(n);
  for (int s = 0; s <= bound; ++s) {
    std::function<bool(int, bool)> rec = [&](int i, bool hit) -> bool {
      if (i == n) return hit && f(v);
      for (long x = -s; x <= s; ++x) {
        v[i] = x;
        if (rec(i + 1, hit || std::labs(x) == s)) return true;
      }
      return false;
    };
    if (rec(0, s == 0 ? true : false)) return;
  }
}

std::vector<long> to_long(const GramMatrix& g) {
  std::vector<long> out;
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) out.push_back(g(i, j).get_si());
  return out;
}

}  // namespace

std::optional<UnimodularMap> find_congruence(const GramMatrix& g, const GramMatrix& target, int bound) {
  int n = int(g.rows());
  if (target.rows() != n) return std::nullopt;
  std::vector<long> gl = to_long(g);
  // candidate vectors for each diagonal value
  std::map<long, std::vector<std::vector<long>>> by_norm;
  for_each_vector(n, bound, [&](const std::vector<long>& v) {
    long q = ldot(gl, n, v, v);
    by_norm[q].push_back(v);
    return false;
  });
  std::vector<std::vector<long>> chosen;
  std::function<bool(int)> rec = [&](int col) -> bool {
    if (col == n) {
      IntMatrix w(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w(i, j) = Integer(chosen[j][i]);
      return abs(det(w)) == 1;
    }
    long want = target(col, col).get_si();
    auto it = by_norm.find(want);
    if (it == by_norm.end()) return false;
    for (auto& v : it->second) {
      bool ok = true;
      for (int p = 0; p < col && ok; ++p) ok = ldot(gl, n, chosen[p], v) == target(p, col).get_si();
      if (!ok) continue;
      chosen.push_back(v);
      if (rec(col + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  UnimodularMap w(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w(i, j) = Integer(chosen[j][i]);
  return w;
}

std::optional<IntMatrix> embed_in_u3(const GramMatrix& b, int bound) {
  GramMatrix u = build_standard("U");
  GramMatrix u3 = direct_sum({u, u, u});
  std::vector<long> gl = to_long(u3);
  long b11 = b(0, 0).get_si(), b12 = b(0, 1).get_si(), b22 = b(1, 1).get_si();
  std::vector<std::vector<long>> first, second;
  for_each_vector(6, bound, [&](const std::vector<long>& v) {
    long q = ldot(gl, 6, v, v);
    if (q == b11) first.push_back(v);
    if (q == b22) second.push_back(v);
    return false;
  });
  for (auto& e : first)
    for (auto& f : second) {
      if (ldot(gl, 6, e, f) != b12) continue;
      IntMatrix m(6, 2);
      for (int i = 0; i < 6; ++i) m(i, 0) = Integer(e[i]), m(i, 1) = Integer(f[i]);
      auto d = elementary_divisors(IntMatrix(m.transpose()));
      if (d.size() == 2 && d[0] == 1 && d[1] == 1) return m;
    }
  return std::nullopt;
}

std::optional<IntMatrix> k3_embedding(const GramMatrix& b, int bound) {
  auto part = embed_in_u3(b, bound);
  if (!part) return std::nullopt;
  IntMatrix e = IntMatrix::Constant(22, 18, Integer(0));
  for (int i = 0; i < 16; ++i) e(i, i) = 1;
  e.block(16, 16, 6, 2) = *part;
  return e;
}

int mordell_weil_rank(int ns_rank, const std::vector<FibreType>& fibres) {
  int r = ns_rank - 2;
  for (auto& f : fibres) r -= f.components() - 1;
  if (r < 0) throw std::domain_error("fibre components exceed the Neron-Severi rank");
  return r;
}

}  // namespace k3lab
