#include "k3lab/polytopes.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <Eigen/Geometry>
#include <Eigen/LU>
#include <json.hpp>

namespace k3lab {

LatticePolytope LatticePolytope::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  if (!j.is_array()) throw std::invalid_argument("polytope JSON must be an array of vertex columns");
  LatticePolytope p;
  for (auto& v : j) {
    if (!v.is_array() || v.size() != 3) throw std::invalid_argument("each vertex must have 3 integer coordinates");
    p.vertices.emplace_back(v[0].get<int>(), v[1].get<int>(), v[2].get<int>());
  }
  validate(p);
  return p;
}

std::string LatticePolytope::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (auto& v : vertices) j.push_back({v[0], v[1], v[2]});
  return j.dump();
}

void validate(const LatticePolytope& p) {
  const auto& v = p.vertices;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] == v[j]) throw std::invalid_argument("repeated vertex");
  // affinely spanning: some 4 vertices with nonzero volume
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b)
      for (std::size_t c = b + 1; c < v.size(); ++c)
        for (std::size_t d = c + 1; d < v.size(); ++d) {
          Eigen::Matrix3i m;
          m << v[b] - v[a], v[c] - v[a], v[d] - v[a];
          if (m.cast<long>().determinant() != 0) return;
        }
  throw std::invalid_argument("vertices do not span R^3");
}

std::vector<Facet> facets(const LatticePolytope& p) {
  validate(p);
  const auto& v = p.vertices;
  const int k = int(v.size());
  std::vector<Facet> out;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      for (int c = b + 1; c < k; ++c) {
        Eigen::Vector3i n = (v[b] - v[a]).cross(v[c] - v[a]);
        if (n.isZero()) continue;
        int g = std::gcd(std::gcd(std::abs(n[0]), std::abs(n[1])), std::abs(n[2]));
        n /= g;
        long off = n.dot(v[a]);
        int above = 0, below = 0;
        for (auto& w : v) {
          long s = n.dot(w);
          above += s > off;
          below += s < off;
        }
        if (above && below) continue;
        if (above) {
          n = -n;
          off = -off;
        }
        Facet f{n, off, {}};
        for (int i = 0; i < k; ++i)
          if (long(n.dot(v[i])) == off) f.vertices.push_back(i);
        bool dup = std::any_of(out.begin(), out.end(), [&](const Facet& o) { return o.normal == f.normal; });
        if (!dup) out.push_back(std::move(f));
      }
  return out;
}

namespace {
bool inside(const std::vector<Facet>& fs, const Point3& x) {
  return std::all_of(fs.begin(), fs.end(), [&](const Facet& f) { return long(f.normal.dot(x)) <= f.offset; });
}
bool on_boundary(const std::vector<Facet>& fs, const Point3& x) {
  return std::any_of(fs.begin(), fs.end(), [&](const Facet& f) { return long(f.normal.dot(x)) == f.offset; });
}
std::vector<Point3> scan(const LatticePolytope& p, const std::vector<Facet>& fs) {
  Point3 lo = p.vertices[0], hi = p.vertices[0];
  for (auto& v : p.vertices) lo = lo.cwiseMin(v), hi = hi.cwiseMax(v);
  std::vector<Point3> pts;
  for (int x = lo[0]; x <= hi[0]; ++x)
    for (int y = lo[1]; y <= hi[1]; ++y)
      for (int z = lo[2]; z <= hi[2]; ++z) {
        Point3 q(x, y, z);
        if (inside(fs, q)) pts.push_back(q);
      }
  return pts;
}
}  // namespace

std::vector<Point3> lattice_points(const LatticePolytope& p) {
  auto fs = facets(p);
  auto pts = scan(p, fs);
  std::vector<Point3> out;
  Point3 origin = Point3::Zero();
  if (std::find(pts.begin(), pts.end(), origin) != pts.end()) out.push_back(origin);
  for (auto& v : p.vertices)
    if (v != origin) out.push_back(v);
  std::vector<Point3> rest;
  for (auto& q : pts)
    if (std::find(out.begin(), out.end(), q) == out.end()) rest.push_back(q);
  std::sort(rest.begin(), rest.end(), [](const Point3& a, const Point3& b) {
    return std::lexicographical_compare(a.data(), a.data() + 3, b.data(), b.data() + 3);
  });
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

bool is_reflexive_terminal(const LatticePolytope& p) {
  auto fs = facets(p);
  Point3 origin = Point3::Zero();
  if (!inside(fs, origin) || on_boundary(fs, origin)) return false;
  for (auto& q : scan(p, fs)) {
    bool vertex = std::find(p.vertices.begin(), p.vertices.end(), q) != p.vertices.end();
    if (on_boundary(fs, q)) {
      if (!vertex) return false;
    } else if (q != origin) {
      return false;
    }
  }
  // facet equations a.x <= 1 with integral a: primitive normal and offset 1
  return std::all_of(fs.begin(), fs.end(), [](const Facet& f) { return f.offset == 1; });
}

bool is_fano(const LatticePolytope& p) {
  for (auto& f : facets(p)) {
    if (f.vertices.size() != 3) return false;
    Eigen::Matrix3i m;
    m << p.vertices[f.vertices[0]], p.vertices[f.vertices[1]], p.vertices[f.vertices[2]];
    long d = m.cast<long>().determinant();
    if (std::abs(d) != 1) return false;
  }
  return true;
}

LaurentFamily anticanonical_family(const LatticePolytope& p) {
  LaurentFamily fam;
  fam.monomials = lattice_points(p);
  for (std::size_t i = 0; i < fam.monomials.size(); ++i) fam.coefficients.push_back("a" + std::to_string(i + 1));
  return fam;
}

std::string LaurentFamily::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    if (i) os << " + ";
    os << coefficients[i];
    std::string num, den;
    for (int k = 0; k < 3; ++k) {
      int e = monomials[i][k];
      if (e == 0) continue;
      std::string f = "t" + std::to_string(k + 1);
      if (std::abs(e) > 1) f += "^" + std::to_string(std::abs(e));
      std::string& dst = e > 0 ? num : den;
      if (!dst.empty()) dst += "*";
      dst += f;
    }
    if (!num.empty()) os << "*" << num;
    if (!den.empty()) os << "/" << (den.find('*') != std::string::npos ? "(" + den + ")" : den);
  }
  return os.str();
}

GkzData gkz_matrix(const LatticePolytope& p) {
  auto pts = lattice_points(p);
  GkzData g;
  g.A.resize(4, Eigen::Index(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    g.A(0, Eigen::Index(i)) = 1;
    g.A.block(1, Eigen::Index(i), 3, 1) = pts[i];
  }
  g.beta << -1, 0, 0, 0;
  return g;
}

LatticePolytope standard_polytope(int j) {
  static const int data[5][5][3] = {
      {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, -1}, {-1, -1, -2}},
      {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, 0, -1}, {0, -1, -1}},
      {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, -1, -1}, {-1, -1, -1}},
      {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, 0}, {0, 0, -1}},
      {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, -1}, {-1, -1, -1}},
  };
  if (j < 0 || j > 4) throw std::out_of_range("polytope index must be 0..4");
  LatticePolytope p;
  for (auto& v : data[j]) p.vertices.emplace_back(v[0], v[1], v[2]);
  return p;
}

}  // namespace k3lab
