#pragma once
#include <array>
#include <cstdint>
#include <stdexcept>

namespace k3lab {

// Up to four variables, 16 bits of exponent each. Variable 0 sits in the
// high bits so that integer comparison is lexicographic order.
class Monomial {
 public:
  static constexpr int kMaxVars = 4;
  static constexpr std::uint32_t kMaxExp = 0xFFFF;

  constexpr Monomial() = default;
  constexpr explicit Monomial(std::uint64_t bits) : bits_(bits) {}

  static Monomial var(int i, unsigned e = 1) {
    check(i, e);
    return Monomial(std::uint64_t(e) << shift(i));
  }

  unsigned operator[](int i) const { return unsigned((bits_ >> shift(i)) & 0xFFFF); }

  Monomial with(int i, unsigned e) const {
    check(i, e);
    std::uint64_t mask = std::uint64_t(0xFFFF) << shift(i);
    return Monomial((bits_ & ~mask) | (std::uint64_t(e) << shift(i)));
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (int i = 0; i < kMaxVars; ++i) d += (*this)[i];
    return d;
  }

  bool divides(Monomial o) const {
    for (int i = 0; i < kMaxVars; ++i)
      if ((*this)[i] > o[i]) return false;
    return true;
  }

  // Caller guarantees no overflow of any slot.
  friend Monomial operator*(Monomial a, Monomial b) {
    for (int i = 0; i < kMaxVars; ++i)
      if (a[i] + b[i] > kMaxExp) throw std::overflow_error("monomial exponent overflow");
    return Monomial(a.bits_ + b.bits_);
  }
  // Requires b | a.
  friend Monomial operator/(Monomial a, Monomial b) { return Monomial(a.bits_ - b.bits_); }

  static Monomial gcd(Monomial a, Monomial b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r = r.with(i, a[i] < b[i] ? a[i] : b[i]);
    return r;
  }

  std::uint64_t bits() const { return bits_; }
  bool is_one() const { return bits_ == 0; }
  auto operator<=>(const Monomial&) const = default;

 private:
  static constexpr int shift(int i) { return 16 * (kMaxVars - 1 - i); }
  static void check(int i, unsigned e) {
    if (i < 0 || i >= kMaxVars) throw std::out_of_range("monomial variable index");
    if (e > kMaxExp) throw std::overflow_error("monomial exponent overflow");
  }
  std::uint64_t bits_ = 0;
};

}  // namespace k3lab
