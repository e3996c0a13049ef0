#include <gtest/gtest.h>

#include <climits>

#include "test_support.hpp"

using namespace mineq;
using namespace mineq::testing;

namespace {

TEST(Rational, ParseAndPrintLowestTerms) {
  EXPECT_EQ(Scalar::parse("6/4").str(), "3/2");
  EXPECT_EQ(Scalar::parse("-10/5").str(), "-2");
  EXPECT_EQ(Scalar::parse("0/7").str(), "0");
  EXPECT_EQ(Scalar::parse("inf"), inf());
  EXPECT_EQ(Scalar::parse("-inf"), Scalar::neg_inf());
  EXPECT_EQ(Scalar::parse("123456789012345678901234567890").str(), "123456789012345678901234567890");
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "1/0", "abc", "1.5", "1/-2", "--1", "/3", "3/", " 1"})
    EXPECT_THROW(Scalar::parse(bad), InvalidInstance) << bad;
}

TEST(Rational, RoundTripsThroughText) {
  Rng r(1);
  for (int k = 0; k < 500; ++k) {
    const Scalar x(r.uniform(-1000000, 1000000), r.uniform(1, 1000));
    EXPECT_EQ(Scalar::parse(x.str()), x);
  }
}

TEST(Rational, OrderWithInfinities) {
  EXPECT_LT(Scalar::neg_inf(), Q(-1000000));
  EXPECT_LT(Q(1000000), inf());
  EXPECT_LT(Q(1, 3), Q(1, 2));
  EXPECT_EQ(inf(), inf());
  EXPECT_NE(inf(), Scalar::neg_inf());
  EXPECT_EQ(min(Q(2), inf()), Q(2));
  EXPECT_EQ(max(Q(2), inf()), inf());
}

TEST(Rational, InfiniteArithmetic) {
  EXPECT_EQ(inf() + Q(5), inf());
  EXPECT_EQ(Q(5) - inf(), Scalar::neg_inf());
  EXPECT_EQ(inf() * Q(-2), Scalar::neg_inf());
  EXPECT_EQ(Q(3) / inf(), Q(0));
  EXPECT_THROW(inf() - inf(), std::domain_error);
  EXPECT_THROW(inf() * Q(0), std::domain_error);
  EXPECT_THROW(Q(1) / Q(0), std::domain_error);
  EXPECT_THROW(inf() / inf(), std::domain_error);
  EXPECT_THROW((void)inf().value(), std::domain_error);
}

TEST(Rational, ExtremeIntegers) {
  EXPECT_EQ(Scalar(LLONG_MIN).str(), "-9223372036854775808");
  EXPECT_EQ(Scalar(LLONG_MAX) + Scalar(1), Scalar::parse("9223372036854775808"));
}

std::string i128(__int128 x) {
  if (x == 0) return "0";
  const bool neg = x < 0;
  std::string out;
  for (unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x) : x; u != 0; u /= 10)
    out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
  return neg ? "-" + out : out;
}

// Against 128-bit integer arithmetic on random operands.
TEST(RationalProperty, AgreesWithIntegerArithmetic) {
  Rng r(2);
  for (int k = 0; k < 2000; ++k) {
    const long long a = r.uniform(LLONG_MIN / 2, LLONG_MAX / 2);
    const long long b = r.uniform(LLONG_MIN / 2, LLONG_MAX / 2);
    EXPECT_EQ((Scalar(a) + Scalar(b)).str(), i128(static_cast<__int128>(a) + b));
    EXPECT_EQ((Scalar(a) - Scalar(b)).str(), i128(static_cast<__int128>(a) - b));
    EXPECT_EQ((Scalar(a) * Scalar(b)).str(), i128(static_cast<__int128>(a) * b));
    EXPECT_EQ(Scalar(a) < Scalar(b), a < b);
    EXPECT_TRUE((Scalar(a) * Scalar(b)).is_integer());
  }
}

TEST(RationalProperty, FieldLaws) {
  Rng r(3);
  auto pick = [&] { return Scalar(r.uniform(-50, 50), r.uniform(1, 12)); };
  for (int k = 0; k < 2000; ++k) {
    const Scalar a = pick(), b = pick(), c = pick();
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a - a, Q(0));
    if (!b.is_zero()) {
      EXPECT_EQ((a / b) * b, a);
    }
  }
}

}  // namespace
