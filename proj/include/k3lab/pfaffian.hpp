#pragma once
// Rank-4 Pfaffian systems of the period equations in the theta frame:
// theta_lambda phi = alpha phi, theta_mu phi = beta phi.
#include <string>
#include <utility>
#include <vector>

#include "k3lab/matrix.hpp"
#include "k3lab/periods.hpp"

namespace k3lab {

using ThetaMonomial = std::pair<int, int>;  // theta_lambda^a theta_mu^b

const VarList& base_vars();  // {"lambda", "mu"}
const std::vector<ThetaMonomial>& standard_basis();   // 1, tl, tm, tl^2
const std::vector<ThetaMonomial>& alternate_basis();  // 1, tl, tm, tm^2

struct PfaffianSystem {
  int family = -1;
  std::vector<ThetaMonomial> basis;
  RFMatrix alpha, beta;
};

// Entries of the printed matrices that need repair; matrix is 'a' or 'b',
// row and col are 0-based.
struct PfaffianRepair {
  int family;
  char matrix;
  int row, col;
  std::string text;
  std::string reason;
};
const std::vector<PfaffianRepair>& pfaffian_repairs();

// Printed entry as transcribed; throws domain_error if it uses an undefined symbol.
RationalFunction printed_entry(int j, char matrix, int r, int c);

// Printed matrices with the repairs applied.
PfaffianSystem pfaffian_data(int j);

// theta_mu(alpha) - theta_lambda(beta) + alpha beta - beta alpha
RFMatrix integrability_residual(const PfaffianSystem& p);
bool check_integrability(const PfaffianSystem& p);

// Normal forms modulo the left ideal (D1, D3) over Q(lambda, mu).
PfaffianSystem derive_pfaffian(const ThetaOperator& d1, const ThetaOperator& d3, int family,
                               const std::vector<ThetaMonomial>& basis = standard_basis());
PfaffianSystem derive_pfaffian(int j);  // from period_operator(j, 1), period_operator(j, 3)

// phi' = g phi
PfaffianSystem gauge(const PfaffianSystem& p, const RFMatrix& g);

// Frame change to d/dlambda, d/dmu: alpha / lambda, beta / mu.
std::pair<RFMatrix, RFMatrix> derivative_frame(const PfaffianSystem& p);

struct SingularFactor {
  Poly factor;
  bool apparent = false;
};

struct SingularLocus {
  std::vector<SingularFactor> factors;
  std::vector<Poly> true_factors() const;
  std::vector<Poly> apparent_factors() const;
};

// Pairwise coprime, primitive factors whose product has the same roots.
std::vector<Poly> coprime_base(const std::vector<Poly>& polys);

// Denominator factors, tested for apparency in the alternate basis; the
// coordinate lines lambda = 0, mu = 0 are always true singularities.
SingularLocus singular_locus_from(const PfaffianSystem& p);

}  // namespace k3lab
