#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cherednik/charpoly.hpp"

using namespace cherednik;

namespace {

GradedCharacter sym(const Rational& off, std::vector<long long> coeffs, int rank) {
  // coeffs c0..ck meaning ck*(t^-k + t^k) ... c0 at centre, offset -k
  std::map<long long, BigInt> num;
  long long k = static_cast<long long>(coeffs.size()) - 1;
  for (long long i = 0; i < static_cast<long long>(coeffs.size()); ++i) {
    num[k - i] = BigInt(coeffs[static_cast<size_t>(i)]);
    num[k + i] = BigInt(coeffs[static_cast<size_t>(i)]);
  }
  return GradedCharacter(off, std::move(num), rank);
}

// oracle: long multiplication of the numerator by (sum_k t^k)^rank, truncated
std::vector<long long> series_oracle(const std::map<long long, BigInt>& num, int rank,
                                     long long upto) {
  std::vector<long long> geo(static_cast<size_t>(upto) + 1, 1);
  std::vector<long long> acc(static_cast<size_t>(upto) + 1, 0);
  acc[0] = 1;
  for (int r = 0; r < rank; ++r) {
    std::vector<long long> nxt(static_cast<size_t>(upto) + 1, 0);
    for (size_t i = 0; i <= static_cast<size_t>(upto); ++i)
      for (size_t j = 0; i + j <= static_cast<size_t>(upto); ++j)
        nxt[i + j] += acc[i] * geo[j];
    acc = nxt;
  }
  std::vector<long long> out(static_cast<size_t>(upto) + 1, 0);
  for (const auto& [e, c] : num)
    for (long long k = e; k <= upto; ++k)
      out[static_cast<size_t>(k)] += c.to_long_long() * acc[static_cast<size_t>(k - e)];
  return out;
}

}  // namespace

TEST_CASE("addition identities") {
  GradedCharacter x = sym(Rational(-2), {441, 224, 28}, 8);
  CHECK(x + GradedCharacter::zero(8) == x);
  GradedCharacter one = GradedCharacter::monomial(Rational(-2), BigInt(1), 8);
  GradedCharacter t = GradedCharacter::monomial(Rational(-1), BigInt(1), 8);
  GradedCharacter s = one + t;
  CHECK(s.offset() == Rational(-2));
  CHECK(s.numerator().at(0) == BigInt(1));
  CHECK(s.numerator().at(1) == BigInt(1));
  // the chi_L(28_x) numerator at c = 1/10 assembled from its symmetric parts
  GradedCharacter a = sym(Rational(-2), {0, 0, 28}, 8);
  GradedCharacter b = sym(Rational(-1), {0, 224}, 8);
  GradedCharacter c = GradedCharacter::monomial(Rational(0), BigInt(441), 8);
  CHECK(a + b + c == x);
}

TEST_CASE("offset gap must be integral") {
  GradedCharacter a = GradedCharacter::monomial(Rational(1, 2), BigInt(1), 8);
  GradedCharacter b = GradedCharacter::monomial(Rational(1, 3), BigInt(1), 8);
  CHECK_THROWS_AS(a + b, IncompatibleError);
  GradedCharacter c = GradedCharacter::monomial(Rational(5, 2), BigInt(1), 4);
  CHECK_THROWS_AS(a + c, IncompatibleError);  // rank mismatch
}

TEST_CASE("pole orders") {
  // numerator (1-t)^8 * 50 has no pole left at rank 8
  std::map<long long, BigInt> num{{0, BigInt(50)}};
  GradedCharacter fifty(Rational(0), num, 8);
  { // multiply by (1-t)^8
    std::map<long long, BigInt> cur{{0, BigInt(50)}};
    for (int i = 0; i < 8; ++i) {
      std::map<long long, BigInt> nxt;
      for (auto& [e, c] : cur) {
        nxt[e] = nxt[e] + c;
        nxt[e + 1] = nxt[e + 1] - c;
      }
      cur = nxt;
    }
    GradedCharacter x(Rational(0), cur, 8);
    CHECK(x.pole_order_at_one() == 0);
    CHECK(x.dimension_if_finite().value() == BigInt(50));
  }
  GradedCharacter verma = GradedCharacter::monomial(Rational(-6), BigInt(1), 8);
  CHECK(verma.pole_order_at_one() == 8);
  CHECK(!verma.dimension_if_finite().has_value());
  // chi_L(160_z) at c = 1/8: polynomial with value 2970 at t = 1
  GradedCharacter chi160 = sym(Rational(-2), {1224, 713, 160}, 8);
  std::map<long long, BigInt> scaled;
  {
    std::map<long long, BigInt> cur = chi160.numerator();
    for (int i = 0; i < 8; ++i) {
      std::map<long long, BigInt> nxt;
      for (auto& [e, c] : cur) {
        nxt[e] = nxt[e] + c;
        nxt[e + 1] = nxt[e + 1] - c;
      }
      for (auto it = nxt.begin(); it != nxt.end();)
        it = it->second.is_zero() ? nxt.erase(it) : std::next(it);
      cur = nxt;
    }
    GradedCharacter x(Rational(-2), cur, 8);
    CHECK(x.pole_order_at_one() == 0);
    CHECK(x.dimension_if_finite().value() == BigInt(2970));
  }
  CHECK_THROWS_AS(GradedCharacter::zero(8).pole_order_at_one(), ZeroCharacterError);
}

TEST_CASE("pole order drops by one under an extra (1-t) factor") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long long> d(-4, 9);
  for (int trial = 0; trial < 200; ++trial) {
    std::map<long long, BigInt> num;
    for (long long e = 0; e < 6; ++e) {
      long long c = d(rng);
      if (c) num[e] = BigInt(c);
    }
    if (num.empty()) continue;
    GradedCharacter x(Rational(0), num, 8);
    std::map<long long, BigInt> shifted;
    for (auto& [e, c] : num) {
      shifted[e] = shifted[e] + c;
      shifted[e + 1] = shifted[e + 1] - c;
    }
    for (auto it = shifted.begin(); it != shifted.end();)
      it = it->second.is_zero() ? shifted.erase(it) : std::next(it);
    GradedCharacter y(Rational(0), shifted, 8);
    int px = x.pole_order_at_one();
    if (px > 0) CHECK(y.pole_order_at_one() == px - 1);
  }
}

TEST_CASE("geometric series and the Verma binomial expansion") {
  GradedCharacter g = GradedCharacter::monomial(Rational(0), BigInt(1), 1);
  auto dims = g.graded_dims(3);
  REQUIRE(dims.size() == 4);
  for (const auto& [deg, c] : dims) CHECK(c == BigInt(1));

  // chi_M(1_x) at c = 1/12: dim 1, weight -6, rank 8; coefficient at -6+k is
  // binom(k+7,7), checked against plain long multiplication of the series
  GradedCharacter verma = GradedCharacter::monomial(Rational(-6), BigInt(1), 8);
  auto have = verma.graded_dims(20);
  auto oracle = series_oracle(verma.numerator(), 8, 20);
  for (long long k = 0; k <= 20; ++k) {
    CHECK(have[static_cast<size_t>(k)].second.to_long_long() == oracle[static_cast<size_t>(k)]);
    long long binom = 1;
    for (long long j = 1; j <= 7; ++j) binom = binom * (k + j) / j;
    CHECK(have[static_cast<size_t>(k)].second == BigInt(binom));
    CHECK(have[static_cast<size_t>(k)].first == Rational(-6 + k));
  }
}

TEST_CASE("random characters agree with the multiplication oracle") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long long> d(-30, 60);
  for (int trial = 0; trial < 50; ++trial) {
    std::map<long long, BigInt> num;
    for (long long e = 0; e < 8; ++e) {
      long long c = d(rng);
      if (c) num[e] = BigInt(c);
    }
    if (num.empty()) continue;
    for (int rank : {2, 5, 8}) {
      GradedCharacter x(Rational(1, 2), num, rank);
      auto have = x.graded_dims(15);
      auto want = series_oracle(num, rank, 15);
      for (size_t k = 0; k < have.size(); ++k)
        CHECK(have[k].second.to_long_long() == want[k]);
    }
  }
}

TEST_CASE("finitely supported series for polynomial characters") {
  GradedCharacter chi = sym(Rational(-2), {364, 168, 35}, 8);
  // after cancelling (1-t)^8 nothing remains but the polynomial itself
  auto [m, quot] = chi.strip_one_minus_t();
  CHECK(m == 0);  // this numerator is not divisible
}

TEST_CASE("polynomial form of a finite-dimensional character") {
  // start from the polynomial and multiply the denominator back in
  std::map<long long, BigInt> cur{{0, BigInt(56)}, {1, BigInt(448)}, {2, BigInt(720)},
                                  {3, BigInt(448)}, {4, BigInt(56)}};
  for (int i = 0; i < 8; ++i) {
    std::map<long long, BigInt> nxt;
    for (auto& [e, c] : cur) {
      nxt[e] = nxt[e] + c;
      nxt[e + 1] = nxt[e + 1] - c;
    }
    for (auto it = nxt.begin(); it != nxt.end();)
      it = it->second.is_zero() ? nxt.erase(it) : std::next(it);
    cur = nxt;
  }
  GradedCharacter chi(Rational(-2), cur, 8);
  auto poly = chi.polynomial_text();
  REQUIRE(poly.has_value());
  CHECK(*poly == "56*t^-2 + 448*t^-1 + 720 + 448*t + 56*t^2");
  GradedCharacter verma = GradedCharacter::monomial(Rational(0), BigInt(3), 8);
  CHECK(!verma.polynomial_text().has_value());
}

TEST_CASE("text round trip") {
  GradedCharacter x = sym(Rational(-37, 2), {720, 448, 56}, 8);
  GradedCharacter y = GradedCharacter::from_text(x.to_text());
  CHECK(x == y);
  GradedCharacter z(Rational(3, 7), {{0, BigInt(-2)}, {5, BigInt(13)}}, 4);
  CHECK(GradedCharacter::from_text(z.to_text()) == z);
  CHECK(GradedCharacter::from_text("t^(0) * (1 + t) / (1-t)^2").numerator().size() == 2);
}

TEST_CASE("add and scale distribute") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long long> d(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    auto mk = [&] {
      std::map<long long, BigInt> num;
      for (long long e = 0; e < 5; ++e) {
        long long c = d(rng);
        if (c) num[e] = BigInt(c);
      }
      return GradedCharacter(Rational(d(rng)), num, 6);
    };
    GradedCharacter a = mk(), b = mk(), c = mk();
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    BigInt k(d(rng));
    CHECK((a + b).scaled(k) == a.scaled(k) + b.scaled(k));
  }
}
