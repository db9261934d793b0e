#include "tropbundle/numeric.hpp"

#include "tropbundle/error.hpp"

namespace tb {

long long to_ll(const Int& v) {
  static const Int lo = std::numeric_limits<long long>::min();
  static const Int hi = std::numeric_limits<long long>::max();
  if (v < lo || v > hi) fail(Err::TooLarge, "integer exceeds 64-bit range");
  return static_cast<long long>(v);
}

std::string int_str(const Int& v) { return v.str(); }

std::string rat_str(const Rat& v) {
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

}  // namespace tb
