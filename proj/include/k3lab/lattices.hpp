#pragma once
// Integral quadratic forms: the Gram matrices of the four families, exact
// determinants and inertia, unimodular certificates, orthogonal complements
// in the K3 lattice, and Mordell-Weil bookkeeping.
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3lab/fibrations.hpp"
#include "k3lab/matrix.hpp"

namespace k3lab {

using GramMatrix = IntMatrix;
using UnimodularMap = IntMatrix;
using SymbolicGram = Matrix<Poly>;  // entries in Z[k]

GramMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows);
GramMatrix direct_sum(const std::vector<GramMatrix>& blocks);

// "U", "E8" (E8(-1)), "A<n>" (A_n(-1)), "K3" (E8(-1)^2 + U^3).
GramMatrix build_standard(const std::string& name);
// E8(-1) + E8(-1) + B.
GramMatrix neron_severi_form(int j);
GramMatrix binary_part(int j);         // B of the Neron-Severi form
GramMatrix transcendental_form(int j);  // U + B'

// M0..M3 from the printed matrix-unit corrections to A18(-1).
GramMatrix build_M(int j);
// The printed unimodular certificate for M_j.
UnimodularMap certificate(int j);

// Configuration data: singular fibres with named components, sections with
// incidences and mutual pairings. Gram entries live in Z[k].
struct FibreSpec {
  FibreType type;
  std::vector<std::string> names;  // identity component first; I_n in cyclic order,
                                   // I*_b as c0, c1, b0..bb, c2, c3
};

struct LatticeConfig {
  std::vector<FibreSpec> fibres;
  std::vector<std::string> sections;                      // zero section first
  std::map<std::string, std::vector<std::string>> meets;  // section -> components
  std::map<std::pair<std::string, std::string>, Poly> pairings;  // section . section
  std::vector<std::string> basis;                         // components, sections, "F"
};

VarList symbol_vars();  // {"k"}
SymbolicGram symbolic_gram(const LatticeConfig& c);
GramMatrix gram(const LatticeConfig& c);  // errors if a symbol remains
Poly symbolic_det(const LatticeConfig& c);

// L0..L3, L3prime, T1..T3, T1bar (symbolic), L1tilde_a1/_a4/_a7, L2tilde,
// L3tilde_0/_1.
LatticeConfig lattice_config(const std::string& name);
std::vector<std::string> lattice_config_names();

Integer det_exact(const GramMatrix& g);
std::pair<int, int> signature(const GramMatrix& g);  // (positive, negative)
bool verify_equivalence(const GramMatrix& m, const UnimodularMap& u, const GramMatrix& target);

std::vector<Integer> elementary_divisors(const IntMatrix& a);
// Columns span the integer kernel of a, size-reduced in the Euclidean norm.
IntMatrix integer_kernel(const IntMatrix& a);

struct Complement {
  IntMatrix basis;  // columns in ambient coordinates
  GramMatrix gram;
};
// embedding: columns are lattice vectors in ambient coordinates.
Complement orthogonal_complement(const IntMatrix& embedding, const GramMatrix& ambient);

// Vectors e, f in U+U+U with Gram b and a primitive span; entries in [-bound, bound].
std::optional<IntMatrix> embed_in_u3(const GramMatrix& b, int bound = 3);
// E8(-1)^2 + B into the K3 lattice, E8 summands mapped identically.
std::optional<IntMatrix> k3_embedding(const GramMatrix& b, int bound = 3);

// Unimodular w with w^T g w = target, entries in [-bound, bound].
std::optional<UnimodularMap> find_congruence(const GramMatrix& g, const GramMatrix& target, int bound = 3);

// rank NS - 2 - sum (m_v - 1).
int mordell_weil_rank(int ns_rank, const std::vector<FibreType>& fibres);

}  // namespace k3lab
