#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "limgreedy/errors.hpp"

namespace limgreedy {

// Exact nonnegative fraction, always kept in lowest terms. Closed-form bounds
// (1/2, 5/8, 1/(n-w+2), ...) are reported as Ratio so they can be compared
// exactly.
class Ratio {
 public:
  constexpr Ratio() = default;
  Ratio(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den == 0) throw invalid_input("Ratio: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const auto g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  constexpr double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend constexpr bool operator==(const Ratio& a, const Ratio& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend constexpr std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    // __int128 avoids overflow of the cross products for any int64 operands.
    const auto lhs = static_cast<__int128>(a.num_) * b.den_;
    const auto rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend Ratio operator+(const Ratio& a, const Ratio& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend Ratio operator-(const Ratio& a, const Ratio& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend Ratio operator/(const Ratio& a, const Ratio& b) {
    return {a.num_ * b.den_, a.den_ * b.num_};
  }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Ratio& r) { return os << r.str(); }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace limgreedy
