#pragma once

#include <gmpxx.h>

#include <string>

namespace chowlift {

// Exact rational scalar backed by GMP. mpq_class keeps every arithmetic
// result in lowest terms with a positive denominator; raw integer pairs must
// go through rat() so the invariant holds from construction onward.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rational& q) { return q.get_str(); }

// Parses "n" or "n/d". Returns false on malformed input or zero denominator.
inline bool rat_parse(const std::string& text, Rational& out) {
  if (text.empty()) return false;
  if (mpq_set_str(out.get_mpq_t(), text.c_str(), 10) != 0) return false;
  if (mpz_sgn(mpq_denref(out.get_mpq_t())) == 0) return false;
  out.canonicalize();
  return true;
}

}  // namespace chowlift
