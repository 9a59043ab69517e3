#include "treedist/rational.hpp"

#include <gtest/gtest.h>

using treedist::Rational;

TEST(Rational, LowestTermsWithPositiveDenominator) {
  Rational r(6, -4);
  EXPECT_EQ(r.numerator(), -3);
  EXPECT_EQ(r.denominator(), 2);
  EXPECT_EQ(r.str(), "-3/2");
}

TEST(Rational, ExactArithmetic) {
  Rational a(1, 3);
  Rational b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, b);
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_EQ(Rational(5).half(), Rational(5, 2));
  EXPECT_EQ(Rational(-7, 3).abs(), Rational(7, 3));
  EXPECT_THROW(a / Rational(0), std::domain_error);
}

TEST(Rational, Ordering) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
  EXPECT_EQ(min(Rational(2), Rational(3, 2)), Rational(3, 2));
  EXPECT_EQ(max(Rational(2), Rational(3, 2)), Rational(2));
}

TEST(Rational, ParseForms) {
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_EQ(Rational::parse("-7"), Rational(-7));
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_EQ(Rational::parse("2.5"), Rational(5, 2));
  EXPECT_EQ(Rational::parse("-0.125"), Rational(-1, 8));
  EXPECT_EQ(Rational::parse(".5"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("3."), Rational(3));
}

TEST(Rational, ParseRejectsGarbage) {
  for (const char* bad : {"", "abc", "1/0", "1/-2", "1.2.3", "--1", "1e3", "/2", "."})
    EXPECT_THROW(Rational::parse(bad), std::invalid_argument) << bad;
}

TEST(Rational, StrRoundTrips) {
  for (const Rational& r : {Rational(0), Rational(-3, 7), Rational(22, 7), Rational(100)})
    EXPECT_EQ(Rational::parse(r.str()), r);
}

TEST(Rational, DecimalDisplay) {
  EXPECT_EQ(Rational(2, 7).decimal(6), "0.285714");
  EXPECT_EQ(Rational(5, 2).decimal(6), "2.5");
}
