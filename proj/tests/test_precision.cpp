#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "phc/precision.hpp"

using namespace phc;

TEST(Precision, LogMatchesLibm) {
  oracle::Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t a = 1 + rng.below(1'000'000), b = 1 + rng.below(1'000'000);
    const Rational x(a, b);
    const double want = std::log2(static_cast<double>(a) / static_cast<double>(b));
    EXPECT_NEAR(log2(x, 128).to_double(), want, 1e-12 * std::max(1.0, std::abs(want))) << a << "/" << b;
    EXPECT_NEAR(ln(x, 128).to_double(), std::log(static_cast<double>(a) / static_cast<double>(b)), 1e-12);
  }
}

TEST(Precision, LogNearOneKeepsRelativeAccuracy) {
  // log2(1 - 10^-k) for large k; libm's log1p is the oracle
  for (int k = 3; k <= 15; ++k) {
    const Rational x = 1 - Rational(1, ipow(BigInt(10), k));
    const double want = std::log1p(-std::pow(10.0, -k)) / std::log(2.0);
    const double got = log2(x, 128).to_double();
    EXPECT_NEAR(got / want, 1.0, 1e-14) << k;
  }
  const Rational above = 1 + Rational(1, ipow(BigInt(10), 30));
  EXPECT_NEAR(log2(above, 128).to_double() / (1e-30 / std::log(2.0)), 1.0, 1e-14);
}

TEST(Precision, ExactPowersOfTwo) {
  EXPECT_EQ(log2(Rational(8), 128).to_decimal(20).positional(), "3.0000000000000000000");
  EXPECT_EQ(log2(Rational(1, 1024), 128).to_decimal(10).scientific(), "-1.000000000e1");
  EXPECT_TRUE(log2(Rational(1), 128).is_zero());
  EXPECT_THROW(log2(Rational(0), 64), InvalidArgument);
  EXPECT_THROW(log2(Rational(-1), 64), InvalidArgument);
}

TEST(Precision, KnownConstants) {
  // log2(25/81) and 1/sqrt(e) to 20 digits
  EXPECT_EQ(log2(Rational(25, 81), 128).to_decimal(20).scientific(), "-1.6959938131099000301e0");
  EXPECT_EQ(inv_sqrt_e(128).to_decimal(20).positional(), "0.60653065971263342360");
  EXPECT_NEAR(inv_sqrt_e(128).to_double(), 1.0 / std::sqrt(std::exp(1.0)), 1e-16);
}

TEST(Precision, PrecisionDoublingIsStable) {
  oracle::Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const Rational x(1 + rng.below(1u << 30), 1 + rng.below(1u << 30));
    EXPECT_EQ(log2(x, 128).to_decimal(30), log2(x, 256).to_decimal(30));
  }
}

TEST(Precision, DecimalFormatting) {
  const Real r = Real::from_rational(Rational(201855746973723LL, 10) / ipow(BigInt(10), 18), 128);
  EXPECT_EQ(r.to_decimal(9, Rounding::truncate).scientific(), "2.01855746e-5");
  EXPECT_EQ(r.to_decimal(9, Rounding::nearest).scientific(), "2.01855747e-5");
  EXPECT_EQ(Real::from_rational(Rational(999, 1000), 64).to_decimal(2).positional(), "1.0");
  EXPECT_EQ(Real::from_rational(Rational(1452, 100000), 64).to_decimal(4).positional(), "0.01452");
  EXPECT_EQ(Real::from_rational(Rational(1100), 64).to_decimal(4).positional(), "1100");
  EXPECT_EQ(Real::from_rational(Rational(-25, 2), 64).to_decimal(3).positional(), "-12.5");
  EXPECT_THROW(Real().to_decimal(0), InvalidArgument);
}

TEST(Precision, ParseDecimal) {
  EXPECT_EQ(parse_decimal("0.0495"), (Decimal{false, "495", -2}));
  EXPECT_EQ(parse_decimal("4.95909e-4"), (Decimal{false, "495909", -4}));
  EXPECT_EQ(parse_decimal("2.01855746E-05"), (Decimal{false, "201855746", -5}));
  EXPECT_EQ(parse_decimal("-12.5"), (Decimal{true, "125", 1}));
  EXPECT_EQ(parse_decimal("4.95909e-4").scientific(), "4.95909e-4");
  EXPECT_THROW(parse_decimal("abc"), InvalidArgument);
}

TEST(Precision, FixedPointFormatting) {
  EXPECT_EQ(format_fixed(Rational(4608, 1000), 1), "4.6");
  EXPECT_EQ(format_fixed(Rational(30844, 1000), 1), "30.8");
  EXPECT_EQ(format_fixed(Rational(1, 20), 1), "0.1");
  EXPECT_EQ(format_fixed(Rational(1, 20), 1, Rounding::truncate), "0.0");
  EXPECT_EQ(format_fixed(Rational(-7, 4), 1), "-1.8");
  EXPECT_EQ(format_fixed(Rational(5), 0), "5");
  EXPECT_EQ(round_to_decimals(Rational(4608, 1000), 1), Rational(46, 10));
}
