#include "k3lab/biseries.hpp"

#include <algorithm>
#include <stdexcept>

namespace k3lab {

BiSeries::BiSeries(int order) : order_(order), valid_(order), c_(index(0, order + 1)) {
  if (order < 0) throw std::invalid_argument("negative series order");
}

const Rational& BiSeries::operator()(int n, int m) const {
  if (n < 0 || m < 0 || n + m > order_) throw std::out_of_range("series index");
  return c_[index(n, m)];
}

Rational& BiSeries::at(int n, int m) {
  if (n < 0 || m < 0 || n + m > order_) throw std::out_of_range("series index");
  return c_[index(n, m)];
}

Rational BiSeries::get(int n, int m) const {
  if (n < 0 || m < 0 || n + m > order_) return 0;
  return c_[index(n, m)];
}

BiSeries& BiSeries::operator+=(const BiSeries& o) {
  int ord = std::min(order_, o.order_);
  BiSeries r(ord);
  for (int d = 0; d <= ord; ++d)
    for (int m = 0; m <= d; ++m) r.at(d - m, m) = get(d - m, m) + o.get(d - m, m);
  r.valid_ = std::min(valid_, o.valid_);
  return *this = std::move(r);
}

BiSeries& BiSeries::operator-=(const BiSeries& o) {
  BiSeries neg = o;
  neg *= Rational(-1);
  return *this += neg;
}

BiSeries& BiSeries::operator*=(const Rational& c) {
  for (auto& x : c_) x *= c;
  return *this;
}

BiSeries operator*(const BiSeries& a, const BiSeries& b) {
  int ord = std::min(a.order_, b.order_);
  BiSeries r(ord);
  for (int d = 0; d <= ord; ++d)
    for (int m = 0; m <= d; ++m) {
      Rational s = 0;
      int n = d - m;
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= m; ++j) s += a.get(i, j) * b.get(n - i, m - j);
      r.at(n, m) = s;
    }
  r.valid_ = std::min(a.valid_, b.valid_);
  return r;
}

bool BiSeries::zero_through(int k) const {
  k = std::min(k, valid_);
  for (int d = 0; d <= k; ++d)
    for (int m = 0; m <= d; ++m)
      if (c_[index(d - m, m)] != 0) return false;
  return true;
}

}  // namespace k3lab
