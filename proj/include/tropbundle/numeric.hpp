#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace tb {

// All core arithmetic is exact: arbitrary-precision integers and rationals.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using VecI = std::vector<Int>;
using MatI = std::vector<VecI>;
using VecQ = std::vector<Rat>;

inline Int rat_floor(const Rat& q) {
  Int n = numerator(q), d = denominator(q);
  Int t = n / d;
  if (n % d != 0 && n < 0) --t;
  return t;
}

inline Int rat_ceil(const Rat& q) { return -rat_floor(-q); }

inline bool is_integer(const Rat& q) { return denominator(q) == 1; }

// C(n,k); zero when n < k or either argument is negative.
inline Int binomial(const Int& n, int k) {
  if (k < 0 || n < 0 || n < k) return 0;
  Int r = 1;
  for (int i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

inline Int dot(const VecI& a, const VecI& b) {
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

long long to_ll(const Int& v);
std::string int_str(const Int& v);
std::string rat_str(const Rat& v);  // "p" or "p/q"

}  // namespace tb
