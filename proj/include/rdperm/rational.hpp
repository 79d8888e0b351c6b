#pragma once

#include <gmpxx.h>

#include <string>

namespace rdperm {

using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const BigInt& z) { return z.get_str(); }

}  // namespace rdperm
