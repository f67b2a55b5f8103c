#include "deltalab/dyadic.hpp"

#include "deltalab/errors.hpp"

#include <algorithm>
#include <charconv>

namespace deltalab {

Dyadic::Dyadic(BigInt numerator, std::uint64_t exponent)
    : num_(std::move(numerator)), exp_(exponent) {
  if (num_ < 0) {
    throw InvariantError("dyadic rational must be nonnegative");
  }
  normalize();
}

void Dyadic::normalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  const std::uint64_t trailing = boost::multiprecision::lsb(num_);
  const std::uint64_t shift = std::min(trailing, exp_);
  if (shift > 0) {
    num_ >>= shift;
    exp_ -= shift;
  }
}

Dyadic Dyadic::pow2(std::int64_t k) {
  Dyadic d;
  if (k >= 0) {
    d.num_ = BigInt(1) << static_cast<unsigned>(k);
    d.exp_ = 0;
  } else {
    d.num_ = 1;
    d.exp_ = static_cast<std::uint64_t>(-k);
  }
  return d;
}

Dyadic& Dyadic::operator+=(const Dyadic& rhs) {
  const std::uint64_t e = std::max(exp_, rhs.exp_);
  num_ = (num_ << static_cast<unsigned>(e - exp_)) +
         (rhs.num_ << static_cast<unsigned>(e - rhs.exp_));
  exp_ = e;
  normalize();
  return *this;
}

Dyadic operator-(const Dyadic& lhs, const Dyadic& rhs) {
  const std::uint64_t e = std::max(lhs.exp_, rhs.exp_);
  BigInt a = lhs.num_ << static_cast<unsigned>(e - lhs.exp_);
  BigInt b = rhs.num_ << static_cast<unsigned>(e - rhs.exp_);
  if (a < b) {
    throw InvariantError("dyadic subtraction would be negative: " + lhs.str() +
                         " - " + rhs.str());
  }
  return Dyadic(a - b, e);
}

Dyadic Dyadic::scaled_pow2(std::int64_t k) const {
  if (num_ == 0) {
    return Dyadic();
  }
  Dyadic d = *this;
  if (k >= 0) {
    const auto up = static_cast<std::uint64_t>(k);
    const std::uint64_t cancel = std::min(up, d.exp_);
    d.exp_ -= cancel;
    d.num_ <<= static_cast<unsigned>(up - cancel);
  } else {
    d.exp_ += static_cast<std::uint64_t>(-k);
    d.normalize();
  }
  return d;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const std::uint64_t e = std::max(a.exp_, b.exp_);
  const BigInt lhs = a.num_ << static_cast<unsigned>(e - a.exp_);
  const BigInt rhs = b.num_ << static_cast<unsigned>(e - b.exp_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Dyadic::str() const {
  return num_.str() + "/2^" + std::to_string(exp_);
}

Dyadic Dyadic::parse(std::string_view text) {
  const auto bad = [&] {
    return ParseError("bad dyadic rational '" + std::string(text) +
                      "' (expected p/2^q or a nonnegative integer)");
  };
  if (text.empty()) throw bad();
  const std::size_t slash = text.find('/');
  std::string_view num_part = text.substr(0, slash == std::string_view::npos
                                                 ? text.size()
                                                 : slash);
  if (num_part.empty() ||
      num_part.find_first_not_of("0123456789") != std::string_view::npos) {
    throw bad();
  }
  BigInt numerator{std::string(num_part)};
  std::uint64_t exponent = 0;
  if (slash != std::string_view::npos) {
    std::string_view rest = text.substr(slash + 1);
    if (rest.size() < 3 || rest[0] != '2' || rest[1] != '^') throw bad();
    std::string_view exp_part = rest.substr(2);
    if (exp_part.find_first_not_of("0123456789") != std::string_view::npos) {
      throw bad();
    }
    const auto res = std::from_chars(exp_part.data(),
                                     exp_part.data() + exp_part.size(),
                                     exponent);
    if (res.ec != std::errc{} || res.ptr != exp_part.data() + exp_part.size()) {
      throw bad();
    }
  }
  return Dyadic(std::move(numerator), exponent);
}

}  // namespace deltalab
