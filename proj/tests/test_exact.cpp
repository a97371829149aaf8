#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace kstab;

namespace {

ExactScalar sqrt10() { return ExactScalar::sqrt(10); }
ExactScalar lower_endpoint() { return (ExactScalar(10) - sqrt10()) / ExactScalar(9); }
ExactScalar upper_endpoint() { return sqrt10() - ExactScalar(2); }

}  // namespace

TEST(Rational, ParsesIntegersFractionsAndDecimals) {
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("-4/3"), Rational(-4, 3));
  EXPECT_EQ(parse_rational(" +6/4 "), Rational(3, 2));
  EXPECT_EQ(parse_rational("1.25"), Rational(5, 4));
  EXPECT_EQ(parse_rational("-.5"), Rational(-1, 2));
  for (auto bad : {"", "1/0", "abc", "1/", "/2", "1.2.3", "--1", "1e5"}) EXPECT_THROW(parse_rational(bad), std::invalid_argument) << bad;
}

TEST(ExactScalar, QuadraticNormalisesRadicand) {
  auto x = ExactScalar::quadratic(0, 1, 12);  // sqrt(12) = 2 sqrt(3)
  EXPECT_EQ(x.radicand(), 3);
  EXPECT_EQ(x.surd_coefficient(), Rational(2));
  EXPECT_TRUE(ExactScalar::quadratic(1, 3, 16).is_rational());
  EXPECT_EQ(ExactScalar::quadratic(1, 3, 16), ExactScalar(13));
  EXPECT_TRUE(ExactScalar::quadratic(5, 0, 7).is_rational());
  EXPECT_THROW(ExactScalar::quadratic(0, 1, -2), std::domain_error);
}

TEST(ExactScalar, CompareEndpointsWithDecimalHints) {
  // sqrt(10) - 2 against 29/25: (29/25 + 2)^2 = 6241/625 < 10, so the surd is larger.
  EXPECT_EQ(scalar_cmp(upper_endpoint(), ExactScalar(Rational(29, 25))), std::strong_ordering::greater);
  // (10 - sqrt(10))/9 against 19/25: 10 - 171/25 = 79/25 and (79/25)^2 < 10, so the surd side is smaller.
  EXPECT_EQ(scalar_cmp(lower_endpoint(), ExactScalar(Rational(19, 25))), std::strong_ordering::less);
  EXPECT_EQ(scalar_cmp(ExactScalar(Rational(1, 3)), ExactScalar(Rational(1, 3))), std::strong_ordering::equal);
}

TEST(ExactScalar, CrossFieldComparison) {
  auto s7 = ExactScalar::sqrt(7);
  auto s10 = ExactScalar::sqrt(10);
  EXPECT_LT(s7, s10);
  EXPECT_GT((ExactScalar(1) + s7) / ExactScalar(3), ExactScalar(Rational(6, 5)));
  EXPECT_LT(s7 - ExactScalar(3), s10 - ExactScalar(3));
  EXPECT_EQ(ExactScalar::sqrt(8), ExactScalar(2) * ExactScalar::sqrt(2));
  EXPECT_NE(ExactScalar::sqrt(2), ExactScalar::sqrt(3));
}

TEST(ExactScalar, ArithmeticStaysInField) {
  auto x = ExactScalar(1) + ExactScalar::sqrt(10);
  auto y = ExactScalar(1) - ExactScalar::sqrt(10);
  auto p = x * y;
  EXPECT_TRUE(p.is_rational());
  EXPECT_EQ(p, ExactScalar(-9));
  EXPECT_EQ(x + y, ExactScalar(2));
  EXPECT_EQ(x / x, ExactScalar(1));
  EXPECT_EQ(x * x.inverse(), ExactScalar(1));
  EXPECT_THROW(ExactScalar::sqrt(2) + ExactScalar::sqrt(3), std::domain_error);
  EXPECT_THROW(ExactScalar(0).inverse(), std::domain_error);
}

TEST(ExactScalar, DisplayStrings) {
  EXPECT_EQ(lower_endpoint().str(), "(10-sqrt(10))/9");
  EXPECT_EQ(upper_endpoint().str(), "sqrt(10)-2");
  EXPECT_EQ(ExactScalar(Rational(-4, 3)).str(), "-4/3");
  EXPECT_EQ(ExactScalar::sqrt(Rational(7, 9)).str(), "sqrt(7)/3");
}

TEST(ExactScalar, ParseRoundTripsDisplay) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Rational a = oracle::random_rational(rng, 20, 9), b = oracle::random_rational(rng, 20, 9);
    std::uniform_int_distribution<int> dd(2, 30);
    auto x = ExactScalar::quadratic(a, b, dd(rng));
    EXPECT_EQ(parse_scalar(x.str()), x) << x.str();
  }
  EXPECT_EQ(parse_scalar("(10 - sqrt(10)) / 9"), lower_endpoint());
  EXPECT_THROW(parse_scalar("sqrt(2) + sqrt(3)"), std::domain_error);
  EXPECT_THROW(parse_scalar("sqrt(-1)"), std::domain_error);
  EXPECT_THROW(parse_scalar("1 +"), std::invalid_argument);
}

TEST(ExactScalarProperty, TotalOrderOnMixedTriples) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(0, 3), rad(2, 13);
  auto random_scalar = [&]() {
    Rational a = oracle::random_rational(rng, 12, 6);
    if (pick(rng) == 0) return ExactScalar(a);
    return ExactScalar::quadratic(a, oracle::random_rational(rng, 6, 4), rad(rng));
  };
  for (int i = 0; i < 400; ++i) {
    ExactScalar x = random_scalar(), y = random_scalar(), z = random_scalar();
    auto xy = x <=> y, yx = y <=> x;
    EXPECT_EQ(xy, 0 <=> (yx < 0 ? -1 : (yx > 0 ? 1 : 0)));
    if (x <= y && y <= z) EXPECT_LE(x, z);
    if (x < y && y < z) EXPECT_LT(x, z);
    // Agrees with floating point whenever the gap is comfortably large.
    if (std::abs(x.approx() - y.approx()) > 1e-9) EXPECT_EQ(x < y, x.approx() < y.approx());
  }
}

TEST(ExactScalarProperty, SameFieldArithmeticMatchesDefinition) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    Rational a = oracle::random_rational(rng, 9, 5), b = oracle::random_rational(rng, 9, 5);
    Rational c = oracle::random_rational(rng, 9, 5), d = oracle::random_rational(rng, 9, 5);
    auto x = ExactScalar::quadratic(a, b, 5), y = ExactScalar::quadratic(c, d, 5);
    auto p = x * y;
    EXPECT_EQ(p, ExactScalar::quadratic(a * c + 5 * b * d, a * d + b * c, 5));
    EXPECT_EQ(x + y, ExactScalar::quadratic(a + c, b + d, 5));
    if (y.sign() != 0) EXPECT_EQ((x / y) * y, x);
  }
}
