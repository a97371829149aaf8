#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace kstab;

namespace {

std::string parse_message(const std::string& expr, int r) {
  try {
    parse_divisor(expr, r);
  } catch (const parse_error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(ParseDivisor, Examples) {
  auto d = parse_divisor("3H - E1 - E2 - E3 - E4 - E5 - E6 - E7 - 4/3 E8", 8);
  EXPECT_EQ(d.h(), 3);
  std::vector<Rational> e(7, Rational(1));
  e.push_back(Rational(4, 3));
  EXPECT_EQ(d.e(), e);

  auto h = parse_divisor("H", 0);
  EXPECT_EQ(h, DivisorClass::hyperplane(0));
  EXPECT_EQ(h.h(), 1);

  auto k = parse_divisor("-3H + E1 + E2", 2);
  EXPECT_EQ(k.h(), -3);
  EXPECT_EQ(k.e(), (std::vector<Rational>{-1, -1}));
  EXPECT_EQ(k, SurfaceModel(2).canonical());
}

TEST(ParseDivisor, CoefficientForms) {
  EXPECT_EQ(parse_divisor("2*H - 1/2*E1", 1), parse_divisor("2H - 1/2 E1", 1));
  EXPECT_EQ(parse_divisor("  H+E1 ", 1), DivisorClass::hyperplane(1) + DivisorClass::exceptional(1, 1));
  EXPECT_EQ(parse_divisor("H - H", 3), DivisorClass(3));
  EXPECT_EQ(parse_divisor("0", 3), DivisorClass(3));
  EXPECT_EQ(parse_divisor("0 + E2", 3), DivisorClass::exceptional(3, 2));
  EXPECT_THROW(parse_divisor("2", 3), parse_error);
  EXPECT_EQ(parse_divisor("3H - E1 - ... - E8", 8), SurfaceModel(8).anticanonical());
  EXPECT_EQ(parse_divisor("6H - 2E1 - ... - 2E7 - 3E8", 8).str(), "6H - 2E1 - 2E2 - 2E3 - 2E4 - 2E5 - 2E6 - 2E7 - 3E8");
}

TEST(ParseDivisor, Errors) {
  EXPECT_EQ(parse_message("3H - F1", 2), "unknown symbol 'F1' at position 5 in '3H - F1'");
  EXPECT_EQ(parse_message("H - E9", 8), "E9 does not exist on Bl_8 P^2 (need 1 <= k <= 8) at position 6 in 'H - E9'");
  EXPECT_THROW(parse_divisor("H - E3", 2), parse_error);
  EXPECT_THROW(parse_divisor("1/0 H", 2), parse_error);
  EXPECT_THROW(parse_divisor("1//2 H", 2), parse_error);
  EXPECT_THROW(parse_divisor("", 2), parse_error);
  EXPECT_THROW(parse_divisor("H E1", 2), parse_error);
  EXPECT_THROW(parse_divisor("H + + E1", 2), parse_error);
  EXPECT_THROW(parse_divisor("E1 - ... - 2E3", 3), parse_error);
  EXPECT_THROW(parse_divisor("H - t*E1", 1), parse_error);
  EXPECT_THROW(parse_divisor("H", 9), std::invalid_argument);
  static_assert(std::is_base_of_v<std::invalid_argument, parse_error>);
}

TEST(ParseFamily, SplitsBaseAndDirection) {
  SurfaceModel s(8);
  auto [base, dir] = parse_family("3H-E1-...-E7 - t*E8", 8);
  EXPECT_EQ(base, parse_divisor("3H - E1 - ... - E7", 8));
  EXPECT_EQ(dir, -s.E(8));
  auto [b2, d2] = parse_family("H + 2 s E1 - s H", 1, "s");
  EXPECT_EQ(b2, parse_divisor("H", 1));
  EXPECT_EQ(d2, parse_divisor("2E1 - H", 1));
  EXPECT_THROW(parse_family("H", 1, "H"), std::invalid_argument);
  EXPECT_THROW(parse_family("H - u*E1", 1, "t"), parse_error);
}

TEST(ParseProperty, PrinterRoundTrip) {
  std::mt19937_64 rng(67);
  std::uniform_int_distribution<int> rr(0, 8);
  for (int i = 0; i < 300; ++i) {
    int r = rr(rng);
    std::vector<Rational> e;
    for (int k = 0; k < r; ++k) e.push_back(i % 3 ? oracle::random_rational(rng, 5, 3) : Rational(0));
    DivisorClass d(oracle::random_rational(rng, 9, 4), e);
    EXPECT_EQ(parse_divisor(d.str(), r), d) << d.str();
  }
}
