#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "phc/errors.hpp"

namespace phc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt ipow(const BigInt& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

/// Integer power of a rational; negative exponents invert.
inline Rational rpow(const Rational& base, int exp) {
  Rational r = 1;
  Rational b = exp < 0 ? Rational(1) / base : base;
  unsigned e = exp < 0 ? static_cast<unsigned>(-exp) : static_cast<unsigned>(exp);
  while (e) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline std::string to_string(const BigInt& x) { return x.str(); }

/// "p/q", or just "p" when the denominator is one.
inline std::string to_string(const Rational& x) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline BigInt parse_bigint(const std::string& s) {
  if (s.empty()) throw InvalidArgument("empty integer");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw InvalidArgument("malformed integer '" + s + "'");
  for (std::size_t j = i; j < s.size(); ++j)
    if (s[j] < '0' || s[j] > '9') throw InvalidArgument("malformed integer '" + s + "'");
  return BigInt(s);
}

inline bool is_integral(const Rational& x) { return boost::multiprecision::denominator(x) == 1; }

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace phc
