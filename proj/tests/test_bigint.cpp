#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cherednik/rational.hpp"

using cherednik::BigInt;
using cherednik::Rational;

TEST_CASE("small arithmetic agrees with long long") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> d(-1000000000LL, 1000000000LL);
  for (int i = 0; i < 2000; ++i) {
    long long a = d(rng), b = d(rng);
    CHECK((BigInt(a) + BigInt(b)).to_long_long() == a + b);
    CHECK((BigInt(a) - BigInt(b)).to_long_long() == a - b);
    CHECK((BigInt(a) * BigInt(b)).to_long_long() == a * b);
    CHECK(BigInt::cmp(BigInt(a), BigInt(b)) == (a < b ? -1 : a > b ? 1 : 0));
  }
}

TEST_CASE("string round trip and big products") {
  BigInt x = BigInt::from_string("123456789012345678901234567890");
  CHECK(x.to_string() == "123456789012345678901234567890");
  CHECK((-x).to_string() == "-123456789012345678901234567890");
  BigInt y = x * x;
  CHECK(y.to_string() == "15241578753238836750495351562536198787501905199875019052100");
  CHECK(y.divide_exact(x) == x);
}

TEST_CASE("gcd") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long long> d(1, 1000000);
  auto ref = [](long long a, long long b) {
    while (b) {
      long long t = a % b;
      a = b;
      b = t;
    }
    return a;
  };
  for (int i = 0; i < 500; ++i) {
    long long a = d(rng), b = d(rng);
    CHECK(BigInt::gcd(BigInt(a), BigInt(b)).to_long_long() == ref(a, b));
  }
  CHECK(BigInt::gcd(BigInt(0), BigInt(12)).to_long_long() == 12);
  BigInt big = BigInt::from_string("123456789012345678901234567890");
  CHECK(BigInt::gcd(big * BigInt(6), big * BigInt(15)) == big * BigInt(3));
}

TEST_CASE("rationals normalize and order") {
  Rational a(6, 4), b(3, 2);
  CHECK(a == b);
  CHECK((a + b) == Rational(3));
  CHECK((a * Rational(4, 9)) == Rational(2, 3));
  CHECK(Rational(-1, 2) < Rational(1, 3));
  CHECK(Rational::parse("-37/2").to_string() == "-37/2");
  CHECK(Rational::parse("10").is_integer());
  CHECK((Rational(7, 2) - Rational(3, 2)).to_integer() == 2);
  CHECK_THROWS(Rational(1, 0));
}
