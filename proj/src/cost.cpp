#include "tnopt/cost.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tnopt {

Cost::Cost(Integer v) : value_(std::move(v)) {
  if (value_.sign() < 0) throw std::invalid_argument("cost must be non-negative");
}

Cost Cost::from_string(std::string_view digits) {
  if (digits.empty()) throw std::invalid_argument("empty cost string");
  for (char c : digits) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("invalid cost string '" + std::string(digits) + "'");
    }
  }
  return Cost(Integer(std::string(digits)));
}

double Cost::ln() const {
  if (value_.is_zero()) return -std::numeric_limits<double>::infinity();
  const auto bits = boost::multiprecision::msb(value_);
  if (bits < 1000) return std::log(value_.convert_to<double>());
  // Keep the top 64 bits; the discarded tail is below double resolution.
  const auto shift = bits - 63;
  const Integer top = value_ >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

double Cost::log10() const { return ln() / std::log(10.0); }

void CostProduct::multiply(std::uint64_t factor) {
  if (promoted_) {
    big_ *= factor;
    return;
  }
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(small_, factor, &out)) {
    big_ = small_;
    big_ *= factor;
    promoted_ = true;
  } else {
    small_ = out;
  }
}

Cost CostProduct::result() const { return promoted_ ? Cost(big_) : Cost(small_); }

}  // namespace tnopt
