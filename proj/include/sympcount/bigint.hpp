#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace sympcount {

// Exact integer type used wherever counts or determinants can outgrow 64 bits.
using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(BigInt base, unsigned e) {
  BigInt r = 1;
  while (e) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return r;
}

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(a, b);
}

}  // namespace sympcount
