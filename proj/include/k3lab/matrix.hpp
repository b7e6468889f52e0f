#pragma once
// Eigen containers over exact scalars.
#include <Eigen/Core>

#include "k3lab/ratfunc.hpp"

namespace k3lab::detail {
template <class T, int Int>
struct ExactTraits : Eigen::GenericNumTraits<T> {
  using Real = T;
  using NonInteger = T;
  using Nested = T;
  using Literal = T;
  enum { IsInteger = Int, IsSigned = 1, IsComplex = 0, RequireInitialization = 1, ReadCost = 1, AddCost = 10, MulCost = 20 };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace k3lab::detail

namespace Eigen {
template <> struct NumTraits<mpz_class> : k3lab::detail::ExactTraits<mpz_class, 1> {};
template <> struct NumTraits<mpq_class> : k3lab::detail::ExactTraits<mpq_class, 0> {};
template <> struct NumTraits<k3lab::Poly> : k3lab::detail::ExactTraits<k3lab::Poly, 0> {};
template <> struct NumTraits<k3lab::RationalFunction> : k3lab::detail::ExactTraits<k3lab::RationalFunction, 0> {};
}  // namespace Eigen

namespace k3lab {

template <class T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using QMatrix = Matrix<Rational>;
using RFMatrix = Matrix<RationalFunction>;

inline bool is_zero(const Integer& x) { return x == 0; }
inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const Poly& x) { return x.is_zero(); }
inline bool is_zero(const RationalFunction& x) { return x.is_zero(); }

// Products and sums written out: exact types with expression templates are
// safer this way than through Eigen's lazy product kernels.
template <class T>
Matrix<T> mul(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows() || a.cols() == 0) throw std::invalid_argument("matrix shape mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      T s = a(i, 0) * b(0, j);
      for (Eigen::Index k = 1; k < a.cols(); ++k)
        if (!is_zero(a(i, k)) && !is_zero(b(k, j))) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

template <class T>
Matrix<T> congruence(const Matrix<T>& u, const Matrix<T>& g) {
  Matrix<T> ut = u.transpose();
  return mul<T>(mul<T>(ut, g), u);
}

}  // namespace k3lab
