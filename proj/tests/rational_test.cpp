#include <gtest/gtest.h>

#include <cstdint>
#include <limits>
#include <random>

#include "credal/rational.hpp"

using credal::Rational;

TEST(Rational, ReducesOnConstruction) {
  const Rational r(6, -4);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(Rational(0, 7).str(), "0");
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, ParsesDecimalsExactly) {
  EXPECT_EQ(Rational::from_string("0.24").str(), "6/25");
  EXPECT_EQ(Rational::from_string("0.99").str(), "99/100");
  EXPECT_EQ(Rational::from_string("2/15").str(), "2/15");
  EXPECT_EQ(Rational::from_string("-1.5").str(), "-3/2");
  EXPECT_EQ(Rational::from_string("7").str(), "7");
  EXPECT_EQ(Rational::from_string("4/6").str(), "2/3");
  EXPECT_FALSE(Rational::parse("1/0"));
  EXPECT_FALSE(Rational::parse("abc"));
  EXPECT_FALSE(Rational::parse("1e5"));
  EXPECT_FALSE(Rational::parse(""));
}

TEST(Rational, Arithmetic) {
  const Rational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, b);
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_LT(b, a);
  EXPECT_EQ((-a).sign(), -1);
  EXPECT_TRUE(Rational(4, 2).is_integer());
}

TEST(Rational, OverflowPromotesToExactBigValues) {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  const Rational x(big, 3);
  const Rational y = x * x;
  EXPECT_EQ(y / x, x);
  EXPECT_EQ((y - y).str(), "0");
  const Rational s = x + Rational(big - 1, 7);
  EXPECT_EQ(s - Rational(big - 1, 7), x);
  EXPECT_EQ((x * 3).str(), std::to_string(big));
}

// Field identities on random values; ordering against cross-multiplication.
TEST(Rational, FieldIdentitiesOnRandomValues) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    std::int64_t n[3], d[3];
    Rational v[3];
    for (int k = 0; k < 3; ++k) {
      n[k] = static_cast<std::int64_t>(rng() % 2001) - 1000;
      d[k] = static_cast<std::int64_t>(rng() % 999) + 1;
      v[k] = Rational(n[k], d[k]);
    }
    const Rational &a = v[0], &b = v[1], &c = v[2];
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
    EXPECT_EQ(a < b, n[0] * d[1] < n[1] * d[0]);
    EXPECT_EQ(a == b, n[0] * d[1] == n[1] * d[0]);
  }
}
