#include "k3lab/linalg.hpp"

namespace k3lab {
namespace {

Integer exact_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
Poly exact_div(const Poly& a, const Poly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw std::logic_error("Bareiss: inexact division");
  return *q;
}
std::size_t cost(const Integer& a) { return mpz_sizeinbase(a.get_mpz_t(), 2); }
std::size_t cost(const Poly& a) { return a.size(); }

template <class Ring>
Echelon<Ring> bareiss_impl(Matrix<Ring> m, int pivot_cols, const Ring& one) {
  Echelon<Ring> e;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  if (pivot_cols < 0) pivot_cols = int(cols);
  Ring prev = one;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < pivot_cols && r < rows; ++c) {
    Eigen::Index best = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (!is_zero(m(i, c)) && (best < 0 || cost(m(i, c)) < cost(m(best, c)))) best = i;
    if (best < 0) continue;
    if (best != r) {
      m.row(best).swap(m.row(r));
      e.sign = -e.sign;
    }
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      for (Eigen::Index j = c + 1; j < cols; ++j) {
        Ring t = m(r, c) * m(i, j);
        if (!is_zero(m(i, c)) && !is_zero(m(r, j))) t -= m(i, c) * m(r, j);
        m(i, j) = exact_div(t, prev);
      }
      m(i, c) = one - one;
    }
    prev = m(r, c);
    e.pivots.push_back(int(c));
    ++r;
  }
  e.m = std::move(m);
  return e;
}

Poly poly_one(const Matrix<Poly>& m) {
  VarsPtr v = intern_vars({});
  for (Eigen::Index i = 0; i < m.size(); ++i) v = merge_vars(v, m(i).vars_ptr());
  return Poly(v, Rational(1));
}

// Common variable list of all entries.
template <class T>
VarsPtr common_vars(const Matrix<T>& m) {
  VarsPtr v = intern_vars({});
  for (Eigen::Index i = 0; i < m.size(); ++i) v = merge_vars(v, m(i).vars_ptr());
  return v;
}

Matrix<Poly> unify_entries(Matrix<Poly> m) {
  VarsPtr v = common_vars(m);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = m(i).to_vars(v);
  return m;
}

// Scale each row of [A | B] into the ring.
IntMatrix to_ring_rows(const QMatrix& a) {
  IntMatrix out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Integer l = 1;
    for (Eigen::Index j = 0; j < a.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      Rational s = a(i, j) * l;
      out(i, j) = s.get_num();
    }
  }
  return out;
}

Matrix<Poly> to_ring_rows(const RFMatrix& a) {
  VarsPtr v = common_vars(a);
  Matrix<Poly> out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Poly l(v, Rational(1));
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const Poly& d = a(i, j).den();
      if (d.is_constant()) continue;
      Poly g = gcd(l, d);
      l = l * *divide_exact(d, g);
    }
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out(i, j) = (a(i, j).num() * *divide_exact(l, a(i, j).den())).to_vars(v);
  }
  return out;
}

Rational to_field(const Integer& x) { return Rational(x); }
RationalFunction to_field(const Poly& x) { return RationalFunction(x); }

template <class Field, class Ring>
LinearSolution<Field> solve_impl(const Matrix<Ring>& aug, int n, int k, const Field& zero) {
  Ring one = [&] {
    if constexpr (std::is_same_v<Ring, Poly>)
      return poly_one(aug);
    else
      return Ring(1);
  }();
  Echelon<Ring> e = bareiss_impl<Ring>(aug, n, one);
  LinearSolution<Field> sol;
  const int rk = int(e.pivots.size());
  sol.consistent = true;
  for (int i = rk; i < e.m.rows(); ++i)
    for (int j = n; j < n + k; ++j)
      if (!is_zero(e.m(i, j))) sol.consistent = false;
  std::vector<int> is_pivot(n, -1);
  for (int r = 0; r < rk; ++r) is_pivot[e.pivots[r]] = r;
  std::vector<int> free_cols;
  for (int c = 0; c < n; ++c)
    if (is_pivot[c] < 0) free_cols.push_back(c);

  auto back = [&](std::vector<Field> x, auto rhs) {
    for (int r = rk - 1; r >= 0; --r) {
      int p = e.pivots[r];
      Field s = rhs(r);
      for (int j = p + 1; j < n; ++j)
        if (!is_zero(e.m(r, j)) && !is_zero(x[j])) s -= to_field(e.m(r, j)) * x[j];
      x[p] = s / to_field(e.m(r, p));
    }
    return x;
  };
  sol.particular = Matrix<Field>::Constant(n, k, zero);
  if (sol.consistent)
    for (int col = 0; col < k; ++col) {
      auto x = back(std::vector<Field>(n, zero), [&](int r) { return to_field(e.m(r, n + col)); });
      for (int i = 0; i < n; ++i) sol.particular(i, col) = x[i];
    }
  sol.kernel = Matrix<Field>::Constant(n, Eigen::Index(free_cols.size()), zero);
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    std::vector<Field> x(n, zero);
    Field unit = zero;
    if constexpr (std::is_same_v<Field, Rational>)
      unit = 1;
    else
      unit = RationalFunction(Poly(zero.vars_ptr(), Rational(1)));
    x[free_cols[f]] = unit;
    x = back(x, [&](int) { return zero; });
    for (int i = 0; i < n; ++i) sol.kernel(i, Eigen::Index(f)) = x[i];
  }
  return sol;
}

}  // namespace

Echelon<Integer> bareiss(IntMatrix m, int pivot_cols) { return bareiss_impl<Integer>(std::move(m), pivot_cols, Integer(1)); }

Echelon<Poly> bareiss(Matrix<Poly> m, int pivot_cols) {
  m = unify_entries(std::move(m));
  Poly one = poly_one(m);
  return bareiss_impl<Poly>(std::move(m), pivot_cols, one);
}

Integer det(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
  if (m.rows() == 0) return 1;
  auto e = bareiss(m);
  if (int(e.pivots.size()) < m.rows()) return 0;
  return e.sign * e.m(m.rows() - 1, m.cols() - 1);
}

Rational det(const QMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
  Rational scale = 1;
  IntMatrix z(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (Eigen::Index j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    scale *= l;
    for (Eigen::Index j = 0; j < m.cols(); ++j) z(i, j) = Rational(m(i, j) * l).get_num();
  }
  return Rational(det(z)) / scale;
}

Poly det(const Matrix<Poly>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
  auto e = bareiss(m);
  Poly one = poly_one(e.m);
  if (m.rows() == 0) return one;
  if (int(e.pivots.size()) < m.rows()) return one - one;
  Poly d = e.m(m.rows() - 1, m.cols() - 1);
  return e.sign < 0 ? -d : d;
}

RationalFunction det(const RFMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
  VarsPtr v = common_vars(m);
  Poly scale(v, Rational(1));
  Matrix<Poly> p = to_ring_rows(m);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Poly l(v, Rational(1));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Poly& d = m(i, j).den();
      if (d.is_constant()) continue;
      Poly g = gcd(l, d);
      l = l * *divide_exact(d, g);
    }
    scale *= l;
  }
  return RationalFunction(det(p), scale);
}

LinearSolution<Rational> solve_linear(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_linear: row mismatch");
  QMatrix aug(a.rows(), a.cols() + b.cols());
  aug << a, b;
  return solve_impl<Rational, Integer>(to_ring_rows(aug), int(a.cols()), int(b.cols()), Rational(0));
}

LinearSolution<RationalFunction> solve_linear(const RFMatrix& a, const RFMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_linear: row mismatch");
  RFMatrix aug(a.rows(), a.cols() + b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    for (Eigen::Index j = 0; j < b.cols(); ++j) aug(i, a.cols() + j) = b(i, j);
  }
  VarsPtr v = common_vars(aug);
  for (Eigen::Index i = 0; i < aug.size(); ++i) aug(i) = aug(i).to_vars(v);
  return solve_impl<RationalFunction, Poly>(to_ring_rows(aug), int(a.cols()), int(b.cols()),
                                            RationalFunction(Poly(v, Rational(0))));
}

QMatrix kernel(const QMatrix& a) { return solve_linear(a, QMatrix::Zero(a.rows(), 0)).kernel; }

RFMatrix kernel(const RFMatrix& a) { return solve_linear(a, RFMatrix(a.rows(), 0)).kernel; }

int rank(const QMatrix& a) { return int(a.cols() - kernel(a).cols()); }

QMatrix inverse(const QMatrix& a) {
  QMatrix id = QMatrix::Zero(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) id(i, i) = 1;
  auto s = solve_linear(a, id);
  if (!s.consistent || s.kernel.cols()) throw std::domain_error("singular matrix");
  return s.particular;
}

RFMatrix inverse(const RFMatrix& a) {
  VarsPtr v = common_vars(a);
  RFMatrix id(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) id(i, j) = RationalFunction(Poly(v, Rational(i == j ? 1 : 0)));
  auto s = solve_linear(a, id);
  if (!s.consistent || s.kernel.cols()) throw std::domain_error("singular matrix");
  return s.particular;
}

}  // namespace k3lab
