/**
 * @file precision.hpp
 * @brief Binary floating values of arbitrary precision and logarithms of exact rationals.
 *
 * Rates are -log2(defect)/((q-1)n) where the defect is an exact rational close
 * to one, so log2 must keep its relative accuracy as 1-defect goes to zero.
 * ln x is evaluated as k ln 2 + 2 atanh(z) with z = (y-1)/(y+1) formed exactly
 * from y = x/2^k in [2/3, 4/3]; the atanh series runs in fixed point scaled by
 * the magnitude of z, so small z costs no accuracy.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

#include "phc/bigint.hpp"
#include "phc/errors.hpp"

namespace phc {

enum class Rounding { truncate, nearest };

/// A finite decimal: value = 0.d1 d2 ... dk x 10^(exponent+1), i.e. d1.d2...dk x 10^exponent.
struct Decimal {
  bool negative = false;
  std::string digits;  ///< significant digits, no leading zeros (or "0")
  int exponent = 0;    ///< decimal exponent of the first digit

  /// "2.01855746e-5"
  std::string scientific() const {
    std::string s = negative ? "-" : "";
    s += digits.substr(0, 1);
    if (digits.size() > 1) s += "." + digits.substr(1);
    return s + "e" + std::to_string(exponent);
  }

  /// "0.01452", "1100", "12.5"
  std::string positional() const {
    std::string s = negative ? "-" : "";
    const int len = static_cast<int>(digits.size());
    if (exponent < 0) {
      s += "0." + std::string(static_cast<std::size_t>(-exponent - 1), '0') + digits;
    } else if (exponent + 1 >= len) {
      s += digits + std::string(static_cast<std::size_t>(exponent + 1 - len), '0');
    } else {
      s += digits.substr(0, static_cast<std::size_t>(exponent + 1)) + "." +
           digits.substr(static_cast<std::size_t>(exponent + 1));
    }
    return s;
  }

  friend bool operator==(const Decimal&, const Decimal&) = default;
};

/// Parses "0.0495", "4.95909e-4", "2.01855746E-05" into significant digits and exponent.
inline Decimal parse_decimal(const std::string& text) {
  Decimal d;
  std::string s = text;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    d.negative = s[0] == '-';
    s.erase(0, 1);
  }
  int exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    exp10 = std::stoi(s.substr(e + 1));
    s.erase(e);
  }
  const auto dot = s.find('.');
  std::string intpart = s.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
  std::string all = intpart + frac;
  const std::size_t lead = all.find_first_not_of('0');
  if (all.empty() || s.find_first_not_of("0123456789.") != std::string::npos)
    throw InvalidArgument("malformed decimal '" + text + "'");
  if (lead == std::string::npos) return Decimal{false, "0", 0};
  d.exponent = static_cast<int>(intpart.size()) - 1 - static_cast<int>(lead) + exp10;
  d.digits = all.substr(lead);
  return d;
}

/// mantissa x 2^exponent, exact; arithmetic results are truncated to a stated precision.
class Real {
 public:
  Real() = default;
  Real(BigInt mantissa, std::int64_t exponent) : mantissa_(std::move(mantissa)), exponent_(exponent) {}

  const BigInt& mantissa() const noexcept { return mantissa_; }
  std::int64_t exponent() const noexcept { return exponent_; }
  bool is_zero() const { return mantissa_ == 0; }
  int sign() const { return mantissa_.sign(); }

  /// x rounded toward zero to `bits` significant bits.
  static Real from_rational(const Rational& x, unsigned bits) {
    BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x);
    if (num == 0) return {};
    const bool neg = num < 0;
    if (neg) num = -num;
    const std::int64_t shift = static_cast<std::int64_t>(bits) + static_cast<std::int64_t>(msb(den)) -
                               static_cast<std::int64_t>(msb(num)) + 1;
    BigInt m = shift >= 0 ? BigInt((num << shift) / den) : BigInt(num / (den << -shift));
    return {neg ? BigInt(-m) : m, -shift};
  }

  Rational to_rational() const {
    if (exponent_ >= 0) return Rational(BigInt(mantissa_ << exponent_));
    return Rational(mantissa_, BigInt(1) << -exponent_);
  }

  double to_double() const {
    if (mantissa_ == 0) return 0.0;
    const BigInt a = abs(mantissa_);
    const std::int64_t excess = std::max<std::int64_t>(0, static_cast<std::int64_t>(msb(a)) - 60);
    const double top = static_cast<double>(static_cast<std::uint64_t>(a >> excess));
    const double v = std::ldexp(top, static_cast<int>(exponent_ + excess));
    return mantissa_ < 0 ? -v : v;
  }

  Real operator-() const { return {-mantissa_, exponent_}; }

  /// Division by a positive integer, keeping at least `bits` significant bits.
  Real divided_by(std::uint64_t d, unsigned bits) const {
    if (d == 0) throw InvalidArgument("division by zero");
    if (mantissa_ == 0) return {};
    const std::int64_t have = static_cast<std::int64_t>(msb(abs(mantissa_)));
    const std::int64_t extra = std::max<std::int64_t>(0, static_cast<std::int64_t>(bits) + 64 - have);
    return {BigInt((mantissa_ << extra) / d), exponent_ - extra};
  }

  friend std::strong_ordering operator<=>(const Real& a, const Real& b) {
    const Rational d = a.to_rational() - b.to_rational();
    if (d < 0) return std::strong_ordering::less;
    if (d > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  friend bool operator==(const Real& a, const Real& b) { return (a <=> b) == 0; }

  /// `sig` significant decimal digits, rounded as requested.
  Decimal to_decimal(unsigned sig, Rounding mode = Rounding::nearest) const {
    if (sig == 0) throw InvalidArgument("need at least one significant digit");
    if (mantissa_ == 0) return Decimal{false, "0", 0};
    const Rational v = abs(to_rational());
    // floor(log10 v): estimate from the binary exponent, then correct exactly.
    const double log2v = static_cast<double>(msb(abs(mantissa_))) + static_cast<double>(exponent_);
    int e10 = static_cast<int>(std::floor(log2v * 0.30102999566398120));
    while (pow10(e10 + 1) <= v) ++e10;
    while (pow10(e10) > v) --e10;
    const Rational scaled = v * pow10(static_cast<int>(sig) - 1 - e10);
    BigInt d = mode == Rounding::nearest ? floor(scaled + Rational(1, 2)) : floor(scaled);
    if (d >= ipow(BigInt(10), sig)) {
      d /= 10;
      ++e10;
    }
    return Decimal{mantissa_ < 0, d.str(), e10};
  }

 private:
  static std::uint64_t msb(const BigInt& x) { return boost::multiprecision::msb(x); }
  static Rational pow10(int e) { return rpow(Rational(10), e); }
  static BigInt floor(const Rational& x) {
    return boost::multiprecision::numerator(x) / boost::multiprecision::denominator(x);
  }

  BigInt mantissa_ = 0;
  std::int64_t exponent_ = 0;
};

namespace detail {

// atanh(num/den) in fixed point with `scale` fractional bits, for |num/den| <= 1/3.
inline BigInt atanh_fixed(const BigInt& num, const BigInt& den, unsigned scale) {
  if (num < 0) return -atanh_fixed(-num, den, scale);  // >> on negatives rounds toward -infinity
  const BigInt z = (num << scale) / den;
  const BigInt z2 = (z * z) >> scale;
  BigInt power = z, sum = z;
  for (unsigned k = 3;; k += 2) {
    power = (power * z2) >> scale;
    if (power == 0) break;
    sum += power / k;
  }
  return sum;
}

inline BigInt ln2_fixed(unsigned scale) { return 2 * atanh_fixed(1, 3, scale); }

}  // namespace detail

/// Natural logarithm of a positive rational, to about `bits` significant bits.
inline Real ln(const Rational& x, unsigned bits) {
  if (x <= 0) throw InvalidArgument("logarithm of a non-positive number");
  // x = y * 2^k with y in [2/3, 4/3]
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  std::int64_t k = static_cast<std::int64_t>(boost::multiprecision::msb(num)) -
                   static_cast<std::int64_t>(boost::multiprecision::msb(den));
  if (k > 0) den <<= k;
  else if (k < 0) num <<= -k;
  while (3 * num > 4 * den) {
    den <<= 1;
    ++k;
  }
  while (3 * num < 2 * den) {
    num <<= 1;
    --k;
  }
  const BigInt zn = num - den, zd = num + den;
  if (zn == 0 && k == 0) return {};
  // Scale so that the result keeps `bits` significant bits even when z is tiny.
  std::int64_t lead = 0;
  if (zn != 0)
    lead = std::max<std::int64_t>(0, static_cast<std::int64_t>(boost::multiprecision::msb(zd)) -
                                         static_cast<std::int64_t>(boost::multiprecision::msb(abs(zn))));
  if (k != 0) lead = 0;
  const unsigned scale = bits + 64 + static_cast<unsigned>(lead);
  BigInt acc = zn == 0 ? BigInt(0) : BigInt(2 * detail::atanh_fixed(zn, zd, scale));
  if (k != 0) acc += k * detail::ln2_fixed(scale);
  return {acc, -static_cast<std::int64_t>(scale)};
}

/// Base-2 logarithm of a positive rational, to about `bits` significant bits.
inline Real log2(const Rational& x, unsigned bits) {
  const Real l = ln(x, bits + 8);
  if (l.is_zero()) return {};
  const auto scale = static_cast<unsigned>(-l.exponent());
  const BigInt l2 = detail::ln2_fixed(scale);
  return {BigInt((l.mantissa() << scale) / l2), l.exponent()};
}

/// 1/sqrt(e) = sum_k (-1/2)^k / k!, to about `bits` bits.
inline Real inv_sqrt_e(unsigned bits) {
  const unsigned scale = bits + 64;
  BigInt term = BigInt(1) << scale, sum = term;
  for (unsigned k = 1; term != 0; ++k) {
    term = -term / (2 * k);
    sum += term;
  }
  return {sum, -static_cast<std::int64_t>(scale)};
}

/// x rounded to a multiple of 10^-decimals.
inline Rational round_to_decimals(const Rational& x, unsigned decimals, Rounding mode = Rounding::nearest) {
  const BigInt scale = ipow(BigInt(10), decimals);
  const Rational a = (x < 0 ? Rational(-x) : x) * scale;
  const BigInt num = boost::multiprecision::numerator(a), den = boost::multiprecision::denominator(a);
  const BigInt v = mode == Rounding::nearest ? BigInt((2 * num + den) / (2 * den)) : BigInt(num / den);
  return Rational(x < 0 ? BigInt(-v) : v, scale);
}

/// x with exactly `decimals` digits after the point, e.g. format_fixed(4.608, 1) = "4.6".
inline std::string format_fixed(const Rational& x, unsigned decimals, Rounding mode = Rounding::nearest) {
  const Rational r = round_to_decimals(x, decimals, mode);
  BigInt v = boost::multiprecision::numerator(r) * ipow(BigInt(10), decimals) / boost::multiprecision::denominator(r);
  const bool neg = v < 0;
  if (neg) v = -v;
  std::string digits = v.str();
  if (digits.size() <= decimals) digits.insert(0, decimals + 1 - digits.size(), '0');
  std::string s = digits.substr(0, digits.size() - decimals);
  if (decimals) s += "." + digits.substr(digits.size() - decimals);
  return (neg ? "-" : "") + s;
}

}  // namespace phc
