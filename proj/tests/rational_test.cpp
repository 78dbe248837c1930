#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "nilblock/rational.hpp"

using namespace nilblock;

TEST(Rational, ParseAcceptsIntegersAndFractions) {
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("-3/6"), make_rational(-1, 2));
  EXPECT_THROW(parse_rational("10/-4"), InputError);  // sign goes on the numerator
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("abc"), InputError);
  EXPECT_THROW(parse_rational(""), InputError);
  EXPECT_THROW(parse_rational("1.5"), InputError);
}

TEST(Rational, ToStringAlwaysHasDenominator) {
  EXPECT_EQ(to_string(Rational(3)), "3/1");
  EXPECT_EQ(to_string(make_rational(-4, 6)), "-2/3");
  EXPECT_EQ(parse_rational(to_string(make_rational(355, 113))), make_rational(355, 113));
}

TEST(Rational, FloorAndFractionalPart) {
  EXPECT_EQ(floor_of(make_rational(-1, 2)), -1);
  EXPECT_EQ(floor_of(make_rational(7, 2)), 3);
  EXPECT_EQ(floor_of(Rational(-4)), -4);
  EXPECT_EQ(frac_of(make_rational(-1, 3)), make_rational(2, 3));
  std::mt19937_64 rng(5);
  for (int k = 0; k < 500; ++k) {
    const Rational q = make_rational(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 97) + 1);
    const Rational f = frac_of(q);
    EXPECT_GE(f, 0);
    EXPECT_LT(f, 1);
    EXPECT_EQ(Rational(floor_of(q)) + f, q);
  }
}

TEST(Rational, SquareFreePartMatchesTrialOracle) {
  auto oracle = [](long n) {
    long d = 1;
    for (long p = 2; p * p <= n; ++p) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      if (e % 2) d *= p;
    }
    return d * n;
  };
  for (long n = 1; n <= 3000; ++n) EXPECT_EQ(squarefree_part(Integer(n)), oracle(n)) << n;
  EXPECT_EQ(squarefree_part(Integer(72)), 2);
  EXPECT_EQ(squarefree_part(Integer(1)), 1);
}

TEST(Rational, FactorizationRecomposes) {
  for (long n : {2L, 360L, 1'000'003L, 999'983L * 999'979L, 1L << 40}) {
    Integer prod = 1;
    for (const auto& pp : factor_integer(Integer(n)))
      for (unsigned e = 0; e < pp.exponent; ++e) prod *= pp.prime;
    EXPECT_EQ(prod, n);
  }
}

TEST(Rational, FactorizationBeyondBoundIsALimit) {
  // Product of two primes above 10^6 whose cofactor is composite.
  const Integer big = Integer("1000003") * Integer("1000033");
  EXPECT_THROW(factor_integer(big), LimitError);
}

TEST(Rational, DivisorsAndLcm) {
  const auto d = positive_divisors(Integer(12));
  std::vector<Integer> want{1, 2, 3, 4, 6, 12};
  EXPECT_EQ(d, want);
  EXPECT_EQ(lcm_of(Integer(4), Integer(6)), 12);
}
