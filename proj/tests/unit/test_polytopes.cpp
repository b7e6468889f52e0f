#include <Eigen/LU>
#include <doctest.h>

#include <algorithm>
#include <set>

#include "k3lab/polytopes.hpp"

using namespace k3lab;

namespace {
// Caratheodory oracle: x lies in the hull iff it lies in a tetrahedron of
// four vertices (barycentric coordinates by Cramer's rule).
bool in_hull_oracle(const std::vector<Point3>& v, const Point3& x) {
  int k = int(v.size());
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      for (int c = b + 1; c < k; ++c)
        for (int d = c + 1; d < k; ++d) {
          Eigen::Matrix3d m;
          m << (v[b] - v[a]).cast<double>(), (v[c] - v[a]).cast<double>(), (v[d] - v[a]).cast<double>();
          double det = m.determinant();
          if (std::abs(det) < 0.5) continue;
          Eigen::Vector3d w = m.inverse() * (x - v[a]).cast<double>();
          if (w.minCoeff() >= -1e-9 && w.sum() <= 1 + 1e-9) return true;
        }
  return false;
}

std::set<std::array<int, 3>> oracle_points(const LatticePolytope& p) {
  std::set<std::array<int, 3>> out;
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y)
      for (int z = -3; z <= 3; ++z)
        if (in_hull_oracle(p.vertices, Point3(x, y, z))) out.insert({x, y, z});
  return out;
}

std::set<std::array<int, 3>> as_set(const std::vector<Point3>& pts) {
  std::set<std::array<int, 3>> s;
  for (auto& q : pts) s.insert({q[0], q[1], q[2]});
  return s;
}

LatticePolytope from(std::initializer_list<std::array<int, 3>> vs) {
  LatticePolytope p;
  for (auto& v : vs) p.vertices.emplace_back(v[0], v[1], v[2]);
  return p;
}
}  // namespace

TEST_CASE("lattice points agree with the tetrahedron oracle") {
  for (int j = 0; j < 5; ++j) {
    auto p = standard_polytope(j);
    auto pts = lattice_points(p);
    CHECK(as_set(pts) == oracle_points(p));
    CHECK(pts.size() == 6);
    CHECK(pts[0] == Point3::Zero());
  }
  auto simplex = from({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(lattice_points(simplex).size() == 4);
}

TEST_CASE("reflexive and terminal") {
  for (int j = 0; j < 5; ++j) CHECK(is_reflexive_terminal(standard_polytope(j)));
  auto fat = from({{2, 0, 0}, {-2, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
  CHECK(!is_reflexive_terminal(fat));
}

TEST_CASE("Fano flags") {
  CHECK(is_fano(standard_polytope(0)));
  CHECK(!is_fano(standard_polytope(1)));
  CHECK(is_fano(standard_polytope(2)));
  CHECK(is_fano(standard_polytope(3)));
  CHECK(is_fano(standard_polytope(4)));
  CHECK(is_fano(from({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}})));
}

TEST_CASE("anticanonical families") {
  CHECK(anticanonical_family(standard_polytope(0)).str() ==
        "a1 + a2*t1 + a3*t2 + a4*t3 + a5/t3 + a6/(t1*t2*t3^2)");
  CHECK(anticanonical_family(from({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}})).str() ==
        "a1 + a2*t1 + a3*t2 + a4*t3 + a5/(t1*t2*t3)");
  CHECK(anticanonical_family(standard_polytope(3)).monomials.size() == 6);
}

TEST_CASE("GKZ matrices match the printed ones") {
  Eigen::MatrixXi a0(4, 6), a1(4, 6), a2(4, 6), a3(4, 6);
  a0 << 1, 1, 1, 1, 1, 1, 0, 1, 0, 0, 0, -1, 0, 0, 1, 0, 0, -1, 0, 0, 0, 1, -1, -2;
  a1 << 1, 1, 1, 1, 1, 1, 0, 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, 1, -1, -1;
  a2 << 1, 1, 1, 1, 1, 1, 0, 1, 0, 0, 0, -1, 0, 0, 1, 0, -1, -1, 0, 0, 0, 1, -1, -1;
  a3 << 1, 1, 1, 1, 1, 1, 0, 1, 0, 0, -1, 0, 0, 0, 1, 0, -1, 0, 0, 0, 0, 1, 0, -1;
  CHECK(gkz_matrix(standard_polytope(0)).A == a0);
  CHECK(gkz_matrix(standard_polytope(1)).A == a1);
  CHECK(gkz_matrix(standard_polytope(2)).A == a2);
  CHECK(gkz_matrix(standard_polytope(3)).A == a3);
  for (int j = 0; j < 5; ++j) {
    auto g = gkz_matrix(standard_polytope(j));
    CHECK(g.A.row(0).minCoeff() == 1);
    CHECK(g.beta == Eigen::Vector4i(-1, 0, 0, 0));
    Eigen::MatrixXd d = g.A.cast<double>();
    CHECK(Eigen::FullPivLU<Eigen::MatrixXd>(d).rank() == 4);
  }
}

TEST_CASE("lattice points closed under vertex-set symmetries") {
  int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (int j = 0; j < 5; ++j) {
    auto p = standard_polytope(j);
    auto vs = as_set(p.vertices);
    auto pts = as_set(lattice_points(p));
    for (auto& pm : perms) {
      std::set<std::array<int, 3>> img;
      for (auto& v : vs) img.insert({v[pm[0]], v[pm[1]], v[pm[2]]});
      if (img != vs) continue;
      std::set<std::array<int, 3>> pimg;
      for (auto& q : pts) pimg.insert({q[pm[0]], q[pm[1]], q[pm[2]]});
      CHECK(pimg == pts);
    }
  }
}

TEST_CASE("polytope JSON input") {
  auto p = LatticePolytope::from_json("[[1,0,0],[0,1,0],[0,0,1],[0,0,-1],[-1,-1,-2]]");
  CHECK(p.vertices.size() == 5);
  CHECK(is_fano(p));
  CHECK_THROWS(LatticePolytope::from_json("[[1,0,0],[1,0,0],[0,0,1],[0,1,0]]"));
  CHECK_THROWS(LatticePolytope::from_json("[[1,0,0],[0,1,0],[1,1,0]]"));
}
