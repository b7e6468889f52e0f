#pragma once
// Truncated power series in two variables with exact coefficients.
// Coefficients exist for n+m <= order; only n+m <= valid_order are trusted.
#include <vector>

#include "k3lab/rational.hpp"

namespace k3lab {

class BiSeries {
 public:
  BiSeries() = default;
  explicit BiSeries(int order);

  int order() const { return order_; }
  int valid_order() const { return valid_; }
  void set_valid_order(int v) { valid_ = v < order_ ? v : order_; }

  const Rational& operator()(int n, int m) const;
  Rational& at(int n, int m);
  Rational get(int n, int m) const;  // zero outside the stored triangle

  BiSeries& operator+=(const BiSeries& o);
  BiSeries& operator-=(const BiSeries& o);
  BiSeries& operator*=(const Rational& c);
  friend BiSeries operator+(BiSeries a, const BiSeries& b) { return a += b; }
  friend BiSeries operator-(BiSeries a, const BiSeries& b) { return a -= b; }
  friend BiSeries operator*(const BiSeries& a, const BiSeries& b);

  // True when every coefficient with n+m <= k vanishes (k capped by validity).
  bool zero_through(int k) const;

 private:
  static std::size_t index(int n, int m) {
    std::size_t d = std::size_t(n + m);
    return d * (d + 1) / 2 + std::size_t(m);
  }
  int order_ = -1;
  int valid_ = -1;
  std::vector<Rational> c_;
};

}  // namespace k3lab
