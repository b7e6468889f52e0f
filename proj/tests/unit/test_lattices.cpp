#include <Eigen/Eigenvalues>
#include <doctest.h>

#include <random>

#include "k3lab/lattices.hpp"
#include "k3lab/linalg.hpp"

using namespace k3lab;

namespace {

// Determinant modulo a prime by plain elimination in int64.
long det_mod(const GramMatrix& g, long p) {
  int n = int(g.rows());
  std::vector<std::vector<long>> a(n, std::vector<long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = ((g(i, j).get_si() % p) + p) % p;
  long d = 1;
  for (int c = 0; c < n; ++c) {
    int r = c;
    while (r < n && a[r][c] == 0) ++r;
    if (r == n) return 0;
    if (r != c) std::swap(a[r], a[c]), d = (p - d) % p;
    d = d * a[c][c] % p;
    long inv = 1, b = a[c][c], e = p - 2;
    for (; e; e >>= 1, b = b * b % p)
      if (e & 1) inv = inv * b % p;
    for (int i = c + 1; i < n; ++i) {
      long f = a[i][c] * inv % p;
      for (int j = c; j < n; ++j) a[i][j] = ((a[i][j] - f * a[c][j]) % p + p) % p;
    }
  }
  return d;
}

bool det_matches_mod_primes(const GramMatrix& g, const Integer& d) {
  for (long p : {1000003L, 998244353L, 1000000007L}) {
    Integer r = d % p;
    if (r < 0) r += p;
    if (r.get_si() != det_mod(g, p)) return false;
  }
  return true;
}

std::pair<int, int> eigen_signs(const GramMatrix& g) {
  Eigen::MatrixXd m(g.rows(), g.cols());
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) m(i, j) = g(i, j).get_d();
  Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues();
  int pos = 0, neg = 0;
  for (double x : ev) (x > 1e-9 ? pos : x < -1e-9 ? neg : pos) += (std::abs(x) > 1e-9);
  return {pos, neg};
}

UnimodularMap random_unimodular(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> idx(0, n - 1), coef(-2, 2);
  UnimodularMap u = UnimodularMap::Identity(n, n);
  for (int s = 0; s < 3 * n; ++s) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    u.col(i) += (u.col(j) * Integer(coef(rng))).eval();
  }
  return u;
}

}  // namespace

TEST_CASE("standard lattices") {
  CHECK(build_standard("U") == int_matrix({{0, 1}, {1, 0}}));
  CHECK(det_exact(build_standard("E8")) == 1);
  CHECK(det_exact(build_standard("A18")) == 19);
  GramMatrix k3 = build_standard("K3");
  CHECK(k3.rows() == 22);
  CHECK(det_exact(k3) == -1);
  CHECK(signature(k3) == std::pair(3, 19));
  CHECK(signature(build_standard("U")) == std::pair(1, 1));
  CHECK(signature(build_standard("E8")) == std::pair(0, 8));
  CHECK_THROWS_AS(build_standard("Z7"), std::invalid_argument);
  CHECK_THROWS_AS(signature(int_matrix({{1, 1}, {1, 1}})), std::domain_error);
}

TEST_CASE("printed intersection matrices and their determinants") {
  const long expect[4] = {-5, -9, -9, -9};
  for (int j = 0; j < 4; ++j) {
    CAPTURE(j);
    GramMatrix m = build_M(j);
    CHECK(m == GramMatrix(m.transpose()));
    Integer d = det_exact(m);
    CHECK(d == expect[j]);
    CHECK(det_matches_mod_primes(m, d));
    CHECK(signature(m) == std::pair(1, 17));
    CHECK(eigen_signs(m) == std::pair(1, 17));
  }
}

TEST_CASE("configuration data rebuilds the printed matrices") {
  // Independent construction from fibre diagrams and section incidences.
  for (int j = 0; j < 4; ++j) {
    CAPTURE(j);
    CHECK(gram(lattice_config("L" + std::to_string(j))) == build_M(j));
  }
}

TEST_CASE("determinants of the auxiliary lattices") {
  CHECK(det_exact(gram(lattice_config("L3prime"))) == -36);
  CHECK(det_exact(gram(lattice_config("L2tilde"))) == -38);
  CHECK(det_exact(gram(lattice_config("L1tilde_a1"))) == 12);
  CHECK(det_exact(gram(lattice_config("L1tilde_a4"))) == -30);
  CHECK(det_exact(gram(lattice_config("L1tilde_a7"))) == 6);
  CHECK(det_exact(gram(lattice_config("L3tilde_0"))) == -16);
  CHECK(det_exact(gram(lattice_config("L3tilde_1"))) == -112);
  for (auto name : lattice_config_names()) {
    if (std::string(name) == "T1bar") continue;
    GramMatrix g = gram(lattice_config(name));
    CAPTURE(name);
    CHECK(det_matches_mod_primes(g, det_exact(g)));
  }
}

TEST_CASE("trivial lattices are hyperbolic of rank 17") {
  // A_{n-1}(-1) + D_{b+4}(-1) + <O, F>: |det| = n * 4 * 1, sign (+1) from signature (1, 16).
  struct Row {
    const char* name;
    long det;
  };
  for (Row r : {Row{"T1", 36}, Row{"T2", 44}, Row{"T3", 40}}) {
    CAPTURE(r.name);
    GramMatrix g = gram(lattice_config(r.name));
    CHECK(g.rows() == 17);
    CHECK(signature(g) == std::pair(1, 16));
    CHECK(det_exact(g) == r.det);
  }
}

TEST_CASE("symbolic determinant with an unknown section pairing") {
  Poly d = symbolic_det(lattice_config("T1bar"));
  VarList k = symbol_vars();
  // The pairing (R0 . O) = k occurs in one symmetric pair of entries, and F pairs only
  // with O and R0, so the k^2 coefficient vanishes.
  CHECK(d.degree(0) <= 1);
  CHECK(d == Poly(k, Rational(-72)) * (Poly(k, Rational(1)) + Poly::variable(k, "k")));
  // Torsion sections are disjoint from O: at k = 0 the value is -72.
  CHECK(d.evaluate(0, Rational(0)) == Poly(k, Rational(-72)));
  CHECK_THROWS_AS(gram(lattice_config("T1bar")), std::invalid_argument);
}

TEST_CASE("unimodular certificates") {
  for (int j = 0; j < 4; ++j) {
    CAPTURE(j);
    UnimodularMap u = certificate(j);
    CHECK(abs(det(u)) == 1);
    CHECK(verify_equivalence(build_M(j), u, neron_severi_form(j)));
    CHECK_FALSE(verify_equivalence(build_M(j), u, neron_severi_form((j + 1) % 4)));
  }
  GramMatrix m = build_M(2);
  CHECK(verify_equivalence(m, UnimodularMap::Identity(18, 18), m));
  UnimodularMap twice = UnimodularMap::Identity(18, 18) * Integer(2);
  CHECK_FALSE(verify_equivalence(m, twice, congruence<Integer>(twice, m)));
}

TEST_CASE("determinant is a congruence invariant") {
  std::mt19937 rng(42);
  for (int j = 0; j < 4; ++j) {
    UnimodularMap u = random_unimodular(18, rng);
    REQUIRE(abs(det(u)) == 1);
    GramMatrix m = build_M(j);
    CHECK(det_exact(congruence<Integer>(u, m)) == det_exact(m));
    CHECK(signature(congruence<Integer>(u, m)) == signature(m));
  }
}

TEST_CASE("Smith form and integer kernels") {
  IntMatrix a = int_matrix({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  CHECK(elementary_divisors(a) == std::vector<Integer>{2, 6, 12});
  IntMatrix b = int_matrix({{1, 2, 3, 4}, {2, 4, 6, 9}});
  IntMatrix k = integer_kernel(b);
  CHECK(k.cols() == 2);
  CHECK(mul<Integer>(b, k) == IntMatrix::Constant(2, 2, Integer(0)));
  // The kernel is saturated: elementary divisors of its basis are all 1.
  for (auto& d : elementary_divisors(IntMatrix(k.transpose()))) CHECK(d == 1);
}

TEST_CASE("orthogonal complements in the K3 lattice") {
  GramMatrix k3 = build_standard("K3");
  for (int j = 0; j < 4; ++j) {
    CAPTURE(j);
    auto e = k3_embedding(binary_part(j));
    REQUIRE(e);
    CHECK(congruence<Integer>(*e, k3) == neron_severi_form(j));
    Complement c = orthogonal_complement(*e, k3);
    CHECK(c.basis.cols() == 4);
    CHECK(mul<Integer>(mul<Integer>(IntMatrix(e->transpose()), k3), c.basis) == IntMatrix::Constant(18, 4, Integer(0)));
    CHECK(signature(c.gram) == std::pair(2, 2));
    CHECK(abs(det_exact(c.gram)) == abs(det_exact(neron_severi_form(j))));
    auto w = find_congruence(c.gram, transcendental_form(j));
    REQUIRE(w);
    CHECK(verify_equivalence(c.gram, *w, transcendental_form(j)));
  }

  // U as the first summand of U + U has complement U.
  GramMatrix uu = direct_sum({build_standard("U"), build_standard("U")});
  IntMatrix first = int_matrix({{1, 0}, {0, 1}, {0, 0}, {0, 0}});
  Complement c = orthogonal_complement(first, uu);
  CHECK(find_congruence(c.gram, build_standard("U")).has_value());

  IntMatrix doubled = int_matrix({{2, 0}, {0, 1}, {0, 0}, {0, 0}});
  CHECK_THROWS_AS(orthogonal_complement(doubled, uu), std::domain_error);
}

TEST_CASE("Mordell-Weil rank") {
  FibreType i1{FibreType::I, 1};
  std::vector<FibreType> f0{{FibreType::I, 3}, {FibreType::I, 15}, i1, i1, i1, i1, i1, i1};
  std::vector<FibreType> f1{{FibreType::I, 9}, {FibreType::Istar, 3}, i1, i1, i1, i1, i1, i1};
  CHECK(mordell_weil_rank(18, f0) == 0);
  // I*3 has 8 components; Q is of infinite order since rank L1 = rank T1 + 1
  CHECK(mordell_weil_rank(18, f1) == 1);
  CHECK(gram(lattice_config("L1")).rows() == gram(lattice_config("T1")).rows() + 1);
  CHECK(mordell_weil_rank(2, {}) == 0);
  CHECK_THROWS_AS(mordell_weil_rank(10, f0), std::domain_error);
}
