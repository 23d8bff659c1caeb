#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace cycdual {

/// Exact rational, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integral(const Rational& r) { return r.get_den() == 1; }

inline bool all_integral(const std::vector<Rational>& v) {
  for (const auto& r : v) {
    if (!is_integral(r)) return false;
  }
  return true;
}

/// "p/q", or "p" when integral.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace cycdual
