#include <gtest/gtest.h>

#include "turnsearch/numeric.hpp"

namespace ts = turnsearch;
using ts::Rational;

TEST(Numeric, ParseRationalForms) {
  EXPECT_EQ(ts::num::parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(ts::num::parse_rational("-6/8"), Rational(-3, 4));
  EXPECT_EQ(ts::num::parse_rational("0.125"), Rational(1, 8));
  EXPECT_EQ(ts::num::parse_rational("1e-3"), Rational(1, 1000));
  EXPECT_EQ(ts::num::parse_rational("2.5E2"), Rational(250));
  EXPECT_EQ(ts::num::parse_rational("7"), Rational(7));
}

TEST(Numeric, ParseRejectsGarbage) {
  EXPECT_THROW(ts::num::parse_rational(""), ts::InputError);
  EXPECT_THROW(ts::num::parse_rational("abc"), ts::InputError);
  EXPECT_THROW(ts::num::parse_rational("1/0"), ts::InputError);
  EXPECT_THROW(ts::num::parse_scalar<double>("1.5x"), ts::InputError);
}

TEST(Numeric, TruncateNeverRounds) {
  EXPECT_EQ(ts::num::truncate4(Rational(17, 12)), "1.4166");
  EXPECT_EQ(ts::num::truncate4(Rational(2, 3)), "0.6666");
  EXPECT_EQ(ts::num::truncate4(17.0 / 12.0), "1.4166");
  EXPECT_EQ(ts::num::truncate4(0.09375), "0.0937");
  EXPECT_EQ(ts::num::truncate4(Rational(-1, 3)), "-0.3333");
  EXPECT_EQ(ts::num::truncate4(Rational(0)), "0.0000");
}

TEST(Numeric, TruncateFloatGuardKeepsExactQuarterValues) {
  // 0.3 * 3 lands just below 0.9 in binary.
  EXPECT_EQ(ts::num::truncate4(0.3 * 3.0), "0.9000");
  EXPECT_EQ(ts::num::truncate4(1.9950), "1.9950");
}

TEST(Numeric, FormatFixedIsLocaleFreeAndDropsNegativeZero) {
  EXPECT_EQ(ts::num::format_fixed(1.5, 6), "1.500000");
  EXPECT_EQ(ts::num::format_fixed(-0.0000001, 3), "0.000");
  EXPECT_EQ(ts::num::format_double(0.1), "0.1");
}

TEST(Numeric, PowAndRatio) {
  EXPECT_EQ(ts::num::pow(Rational(3, 2), 3), Rational(27, 8));
  EXPECT_EQ(ts::num::pow(Rational(2), 0), Rational(1));
  EXPECT_EQ(ts::num::pow(Rational(2), -2), Rational(1, 4));
  EXPECT_DOUBLE_EQ(ts::num::ratio<double>(1, 4), 0.25);
}

TEST(Numeric, ModeValidation) {
  EXPECT_THROW(ts::ArithmeticMode::float64(0.0), ts::InputError);
  EXPECT_THROW(ts::ArithmeticMode::float64(-1.0), ts::InputError);
  EXPECT_TRUE(ts::ArithmeticMode::exact().is_exact());
  EXPECT_EQ(ts::tolerance_for<Rational>(ts::ArithmeticMode::float64()).tol, 0);
}
