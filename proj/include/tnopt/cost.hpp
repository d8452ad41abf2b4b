#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace tnopt {

/// Exact count of floating-point multiplications.
///
/// Backed by an arbitrary-precision integer so that products of many bond
/// dimensions (10^100 and beyond on large lattices) never overflow or round.
/// Values are always non-negative.
class Cost {
 public:
  using Integer = boost::multiprecision::cpp_int;

  Cost() = default;
  explicit Cost(std::uint64_t v) : value_(v) {}
  explicit Cost(Integer v);

  /// Parses a non-negative decimal integer; throws std::invalid_argument.
  static Cost from_string(std::string_view digits);

  const Integer& value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }

  Cost& operator+=(const Cost& o) {
    value_ += o.value_;
    return *this;
  }
  Cost& operator*=(const Cost& o) {
    value_ *= o.value_;
    return *this;
  }
  friend Cost operator+(Cost a, const Cost& b) { return a += b; }
  friend Cost operator*(Cost a, const Cost& b) { return a *= b; }

  friend bool operator==(const Cost& a, const Cost& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Cost& a, const Cost& b) {
    const int c = a.value_.compare(b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Natural logarithm, accurate to double precision at any magnitude.
  /// Returns -infinity for zero.
  double ln() const;
  double log10() const;

  std::string to_string() const { return value_.str(); }

 private:
  Integer value_;
};

/// Running product of bond dimensions with a 64-bit fast path.
class CostProduct {
 public:
  void multiply(std::uint64_t factor);
  Cost result() const;

 private:
  std::uint64_t small_ = 1;
  Cost::Integer big_;
  bool promoted_ = false;
};

}  // namespace tnopt
