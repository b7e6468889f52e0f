#pragma once
#include <string>
#include <vector>

#include <Eigen/Core>

namespace k3lab {

using Point3 = Eigen::Vector3i;

struct LatticePolytope {
  std::vector<Point3> vertices;  // column order as given
  static LatticePolytope from_json(const std::string& text);
  std::string to_json() const;
};

struct Facet {
  Eigen::Vector3i normal;  // primitive outward normal
  long offset = 0;         // normal . x <= offset on the polytope
  std::vector<int> vertices;
};

struct LaurentFamily {
  std::vector<Point3> monomials;
  std::vector<std::string> coefficients;  // a1..ak
  std::string str() const;                // e.g. "a1 + a2*t1 + a5/t3"
};

struct GkzData {
  Eigen::MatrixXi A;     // 4 x k, first row all ones
  Eigen::Vector4i beta;  // (-1, 0, 0, 0)
};

// Throws std::invalid_argument for repeated or affinely degenerate vertices.
void validate(const LatticePolytope& p);

std::vector<Facet> facets(const LatticePolytope& p);
// Origin first, then vertices in column order, then any other points (lex).
std::vector<Point3> lattice_points(const LatticePolytope& p);
bool is_reflexive_terminal(const LatticePolytope& p);
bool is_fano(const LatticePolytope& p);
LaurentFamily anticanonical_family(const LatticePolytope& p);
GkzData gkz_matrix(const LatticePolytope& p);

// The five polytopes P0..P4 of the study.
LatticePolytope standard_polytope(int j);

}  // namespace k3lab
