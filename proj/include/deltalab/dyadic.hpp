#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace deltalab {

using BigInt = boost::multiprecision::cpp_int;

// Nonnegative exact rational of the form numerator / 2^exponent.
// Kept in lowest form: numerator odd, or exponent zero. Zero is 0/2^0.
// All arithmetic is exact; there is no floating point anywhere in the library.
class Dyadic {
public:
  Dyadic() = default;
  explicit Dyadic(std::uint64_t value) : num_(value) {}
  Dyadic(BigInt numerator, std::uint64_t exponent);

  // 2^k; k may be negative.
  static Dyadic pow2(std::int64_t k);

  const BigInt& numerator() const { return num_; }
  std::uint64_t exponent() const { return exp_; }
  bool is_zero() const { return num_ == 0; }

  Dyadic& operator+=(const Dyadic& rhs);
  friend Dyadic operator+(Dyadic lhs, const Dyadic& rhs) {
    lhs += rhs;
    return lhs;
  }
  // Throws InvariantError if the result would be negative.
  friend Dyadic operator-(const Dyadic& lhs, const Dyadic& rhs);

  // value * 2^k, k may be negative.
  Dyadic scaled_pow2(std::int64_t k) const;
  Dyadic half() const { return scaled_pow2(-1); }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.num_ == b.num_ && a.exp_ == b.exp_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  // Canonical rendering "p/2^q", e.g. 3/4 -> "3/2^2", 0 -> "0/2^0".
  std::string str() const;
  // Accepts "p/2^q" or a bare nonnegative integer; canonicalizes.
  static Dyadic parse(std::string_view text);

private:
  BigInt num_ = 0;
  std::uint64_t exp_ = 0;

  void normalize();
};

}  // namespace deltalab
