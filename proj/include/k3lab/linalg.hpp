#pragma once
// Fraction-free (Bareiss) elimination over Z and Q[vars]; solutions and
// kernels over the fraction fields.
#include <vector>

#include "k3lab/matrix.hpp"

namespace k3lab {

template <class Ring>
struct Echelon {
  Matrix<Ring> m;
  std::vector<int> pivots;  // pivot column of each nonzero row
  int sign = 1;             // parity of row swaps
};

Echelon<Integer> bareiss(IntMatrix m, int pivot_cols = -1);
Echelon<Poly> bareiss(Matrix<Poly> m, int pivot_cols = -1);

Integer det(const IntMatrix& m);
Rational det(const QMatrix& m);
Poly det(const Matrix<Poly>& m);
RationalFunction det(const RFMatrix& m);

template <class Field>
struct LinearSolution {
  bool consistent = false;
  Matrix<Field> particular;  // n x k, free variables set to zero
  Matrix<Field> kernel;      // n x d, columns span {x : A x = 0}
};

LinearSolution<Rational> solve_linear(const QMatrix& a, const QMatrix& b);
LinearSolution<RationalFunction> solve_linear(const RFMatrix& a, const RFMatrix& b);

QMatrix kernel(const QMatrix& a);
RFMatrix kernel(const RFMatrix& a);
int rank(const QMatrix& a);
RFMatrix inverse(const RFMatrix& a);
QMatrix inverse(const QMatrix& a);

}  // namespace k3lab
