/**
 * @file bounds.hpp
 * @brief Rate lower bounds for perfect q-hash codes.
 *
 * A q-ary inner code of length n and size m with |S| separated q-subsets,
 * concatenated with a random outer code, yields
 *
 *     R_q >= -1/((q-1) n) * log2(1 - q! |S| / m^q).
 *
 * The argument of the logarithm is the "defect", kept as an exact rational.
 * Every yes/no comparison is made on defects; logarithms only produce the
 * reported rate.
 */
#pragma once

#include <cstdint>
#include <string>

#include "phc/bigint.hpp"
#include "phc/errors.hpp"
#include "phc/precision.hpp"

namespace phc {

inline constexpr unsigned kDefaultPrecisionBits = 128;

struct RateBound {
  unsigned q = 0;
  unsigned n = 1;
  BigInt m;
  Rational defect;
  Real rate;
  unsigned precision_bits = kDefaultPrecisionBits;
  std::string provenance;
  bool heuristic = false;

  Decimal digits(unsigned sig, Rounding mode = Rounding::nearest) const { return rate.to_decimal(sig, mode); }

  /// The rate recomputed at twice the working precision shows the same digits.
  bool stable(unsigned sig, Rounding mode = Rounding::nearest) const;
};

/// -log2(defect) / ((q-1) n) for a defect in (0, 1).
inline Real rate_from_defect(const Rational& defect, unsigned q, unsigned n, unsigned bits) {
  if (defect <= 0 || defect >= 1) throw InvalidArgument("defect " + to_string(defect) + " outside (0,1)");
  if (q < 2 || n < 1) throw InvalidArgument("need q >= 2 and n >= 1");
  return (-log2(defect, bits + 16)).divided_by(std::uint64_t{q - 1} * n, bits + 16);
}

inline bool RateBound::stable(unsigned sig, Rounding mode) const {
  const Real again = rate_from_defect(defect, q, n, 2 * precision_bits);
  return again.to_decimal(sig, mode) == rate.to_decimal(sig, mode);
}

/// Defect 1 - q!/q^q of a uniformly random q-ary code.
inline Rational probabilistic_defect(unsigned q) { return 1 - Rational(factorial(q), ipow(BigInt(q), q)); }

/// R_q >= (1/(q-1)) log2(1 / (1 - q!/q^q)).
inline RateBound rate_probabilistic(unsigned q, unsigned bits = kDefaultPrecisionBits) {
  if (q < 2) throw InvalidArgument("probabilistic bound needs q >= 2");
  RateBound b;
  b.q = q;
  b.n = 1;
  b.m = q;
  b.defect = probabilistic_defect(q);
  b.rate = rate_from_defect(b.defect, q, 1, bits);
  b.precision_bits = bits;
  b.provenance = "probabilistic";
  return b;
}

/// Rate from an inner code with parameters (q, n, m) and |S| separated q-subsets.
inline RateBound rate_from_inner(unsigned q, unsigned n, const BigInt& m, const BigInt& s,
                                 unsigned bits = kDefaultPrecisionBits, std::string provenance = {}) {
  if (q < 2 || n < 1 || m < q) throw InvalidArgument("need q >= 2, n >= 1 and m >= q");
  if (s < 0 || s > binomial(static_cast<std::uint64_t>(m), q))
    throw InvalidArgument("invalid count: |S| = " + s.str() + " exceeds binomial(m, q)");
  RateBound b;
  b.q = q;
  b.n = n;
  b.m = m;
  b.defect = 1 - Rational(factorial(q) * s, ipow(m, q));
  if (b.defect <= 0) throw InvalidArgument("invalid count: q! |S| >= m^q");
  if (b.defect >= 1) throw InvalidArgument("invalid count: |S| = 0 gives no bound");
  b.rate = rate_from_defect(b.defect, q, n, bits);
  b.precision_bits = bits;
  b.provenance = std::move(provenance);
  return b;
}

/// Exact comparison of an inner-code bound with the probabilistic bound.
struct BeatsCertificate {
  bool beats = false;
  unsigned n = 1;
  Rational code_defect;             ///< 1 - q! |S| / m^q
  Rational probabilistic_defect;    ///< 1 - q!/q^q
  Rational probabilistic_power;     ///< (1 - q!/q^q)^n
};

/// True iff 1 - q!|S|/m^q < (1 - q!/q^q)^n, i.e. the inner code's rate is larger.
inline BeatsCertificate beats_probabilistic(unsigned q, unsigned n, const BigInt& m, const BigInt& s) {
  if (q < 2 || n < 1 || m < q) throw InvalidArgument("need q >= 2, n >= 1 and m >= q");
  BeatsCertificate c;
  c.n = n;
  c.code_defect = 1 - Rational(factorial(q) * s, ipow(m, q));
  c.probabilistic_defect = probabilistic_defect(q);
  c.probabilistic_power = rpow(c.probabilistic_defect, static_cast<int>(n));
  c.beats = c.code_defect < c.probabilistic_power;
  return c;
}

/// Sign condition for length-n parity codes: (-1)^{n-1} A_n > (-1)^{n-1} (q!)^{n-1} / q^q.
inline bool parity_beats_condition(unsigned q, unsigned n, const BigInt& a_n) {
  const Rational rhs(ipow(factorial(q), n - 1), ipow(BigInt(q), q));
  return n % 2 == 1 ? Rational(a_n) > rhs : Rational(a_n) < rhs;
}

/// (q!)^2 / q^q: a sum code over a group of order q beats the random bound iff cm exceeds it.
inline Rational sum_code_threshold(unsigned q) { return Rational(ipow(factorial(q), 2), ipow(BigInt(q), q)); }

enum class AsymptoticVariant { three_col, four_col };

inline std::string to_string(AsymptoticVariant v) {
  return v == AsymptoticVariant::three_col ? "three-col" : "four-col";
}

/// Plug-in evaluation of the asymptotic bounds with the o(.) terms set to zero
/// (cm replaced by (1/sqrt e)(q!)^2/q^{q-1}); t = q!/q^q:
///   three-col: -1/(3(q-1)) log2(1 - 3t + 3t^2 - q t^3 / sqrt e)
///   four-col:  -1/(4(q-1)) log2((1-t)^4 - 3 q t^3 / sqrt e)
/// Heuristic only; never used in exact comparisons.
inline RateBound rate_asymptotic(unsigned q, AsymptoticVariant variant, unsigned bits = kDefaultPrecisionBits) {
  if (q < 3) throw InvalidArgument("asymptotic bound needs q >= 3");
  if (q % 4 == 2)
    throw InvalidArgument("q = " + std::to_string(q) +
                          " is 2 mod 4: no improving construction known for this case");
  const Rational t(factorial(q), ipow(BigInt(q), q));
  const Rational c = inv_sqrt_e(bits + 64).to_rational();
  RateBound b;
  b.q = q;
  b.heuristic = true;
  b.precision_bits = bits;
  if (variant == AsymptoticVariant::three_col) {
    b.n = 3;
    b.m = ipow(BigInt(q), 2);
    b.defect = 1 - 3 * t + 3 * t * t - c * q * t * t * t;
    b.provenance = "heuristic three-col";
  } else {
    b.n = 4;
    b.m = ipow(BigInt(q), 2);
    b.defect = rpow(1 - t, 4) - 3 * c * q * t * t * t;
    b.provenance = "heuristic four-col";
  }
  b.rate = rate_from_defect(b.defect, q, b.n, bits);
  return b;
}

}  // namespace phc
