#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

namespace fsum {

/// Arbitrary-precision signed integer used for every homological quantity.
using Int = boost::multiprecision::cpp_int;

inline Int abs_value(const Int& x) { return x < 0 ? Int(-x) : x; }

/// Non-negative gcd with gcd(0, x) = |x|.
inline Int gcd(const Int& a, const Int& b) {
  Int x = abs_value(a);
  Int y = abs_value(b);
  while (y != 0) {
    Int r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

/// Quotient rounded toward negative infinity.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Representative of a modulo m in [0, |m|).
inline Int mod_nonneg(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += abs_value(m);
  return r;
}

inline std::optional<std::int64_t> to_int64(const Int& x) {
  static const Int lo = std::numeric_limits<std::int64_t>::min();
  static const Int hi = std::numeric_limits<std::int64_t>::max();
  if (x < lo || x > hi) return std::nullopt;
  return static_cast<std::int64_t>(x);
}

inline std::string to_string(const Int& x) { return x.str(); }

}  // namespace fsum
