#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

namespace razor {

__extension__ using uint128 = unsigned __int128;

/// Non-negative exact ratio of counts. Denominator is positive.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  Ratio reduced() const {
    const std::uint64_t g = std::gcd(num, den);
    return g == 0 ? *this : Ratio{num / g, den / g};
  }

  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Ratio& a, const Ratio& b) {
    return static_cast<uint128>(a.num) * b.den == static_cast<uint128>(b.num) * a.den;
  }
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    return static_cast<uint128>(a.num) * b.den <=> static_cast<uint128>(b.num) * a.den;
  }
};

}  // namespace razor
