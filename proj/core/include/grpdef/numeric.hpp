#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace grpdef {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts a negative denominator, which the Boost constructor rejects.
inline Rational make_rational(BigInt num, BigInt den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return make_rational(BigInt(num), BigInt(den));
}

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

// "num/den", or just "num" for integers.
std::string to_string(const Rational& r);

bool is_prime(std::int64_t p);

// Largest k with p^k dividing n (n > 0).
int p_adic_valuation(std::int64_t n, std::int64_t p);

std::int64_t lcm_checked(std::int64_t a, std::int64_t b);

}  // namespace grpdef
