#include "grpdef/numeric.hpp"

#include <numeric>

#include "grpdef/errors.hpp"

namespace grpdef {

std::string to_string(const Rational& r) {
  const BigInt den = denominator_of(r);
  if (den == 1) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + den.str();
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int p_adic_valuation(std::int64_t n, std::int64_t p) {
  if (n <= 0 || p < 2) throw InputError("p-adic valuation needs n > 0 and p >= 2");
  int k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
  const std::int64_t g = std::gcd(a, b);
  if (g == 0) return 0;
  std::int64_t l = 0;
  if (__builtin_mul_overflow(a / g, b, &l)) throw InputError("order overflows 64-bit range");
  return l;
}

}  // namespace grpdef
