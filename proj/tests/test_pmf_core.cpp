#include "lightbulb/pmf.hpp"
#include "lightbulb/rational.hpp"
#include "oracles/enumeration.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lightbulb;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

// Random pmf on {0..n} with small integer weights.
Pmf random_pmf(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> weight(0, 5);
  std::vector<long> w(n + 1);
  long total = 0;
  while (total == 0) {
    total = 0;
    for (auto& x : w) total += (x = weight(rng));
  }
  std::vector<Rational> dense;
  for (long x : w) dense.push_back(q(x, total));
  return Pmf::from_dense(n, dense);
}

}  // namespace

TEST(Rational, CanonicalForm) {
  const Rational a = make_rational(6, -8);
  EXPECT_EQ(a.get_num(), -3);
  EXPECT_EQ(a.get_den(), 4);
  EXPECT_EQ(q(1, 3) + q(1, 6), q(1, 2));
  EXPECT_THROW(make_rational(1, 0), std::domain_error);
}

TEST(Rational, DecimalRendering) {
  EXPECT_EQ(to_decimal_string(q(1, 3), 4), "0.3333");
  EXPECT_EQ(to_decimal_string(q(2, 3), 4), "0.6667");
  EXPECT_EQ(to_decimal_string(q(1), 1), "1.0");
  EXPECT_EQ(to_decimal_string(q(-1, 8), 2), "-0.13");
  EXPECT_EQ(to_decimal_string(q(-1, 1000), 2), "0.00");
  EXPECT_EQ(to_fraction_string(q(1)), "1/1");
  EXPECT_EQ(round_up(q(1, 3), 2), q(34, 100));
  EXPECT_EQ(round_up(q(1, 4), 2), q(1, 4));
}

TEST(Binomial, SmallValues) {
  EXPECT_EQ(binomial(4, 2), 6);
  for (int n = 0; n < 20; ++n) EXPECT_EQ(binomial(n, 0), 1);
  EXPECT_EQ(binomial(5, -1), 0);
  EXPECT_EQ(binomial(5, 6), 0);
  EXPECT_THROW(binomial(-1, 0), std::domain_error);
}

TEST(Binomial, MatchesPascalOracle) {
  const auto t = oracle::pascal_triangle(64);
  for (int n = 0; n <= 64; ++n)
    for (int k = 0; k <= n; ++k) ASSERT_EQ(binomial(n, k), t[n][k]) << n << "," << k;
  // Value frozen from the Pascal oracle.
  EXPECT_EQ(t[50][25], BigInt("126410606437752"));
  EXPECT_EQ(binomial(50, 25), BigInt("126410606437752"));
}

TEST(Binomial, PascalRecurrenceExhaustive) {
  for (int n = 1; n <= 64; ++n)
    for (int k = 0; k <= n; ++k)
      ASSERT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST(Pmf, RejectsInvalidMass) {
  EXPECT_THROW(Pmf(3, {{0, q(1, 2)}, {1, q(1, 3)}}), std::invalid_argument);
  EXPECT_THROW(Pmf(3, {{0, q(3, 2)}, {1, q(-1, 2)}}), std::invalid_argument);
  EXPECT_THROW(Pmf(2, {{3, q(1)}}), std::invalid_argument);
  EXPECT_THROW(Pmf(2, {{-1, q(1)}}), std::invalid_argument);
}

TEST(Pmf, DropsZeroMass) {
  const Pmf p(4, {{0, q(0)}, {2, q(1)}});
  EXPECT_EQ(p.support_size(), 1u);
  EXPECT_EQ(p(0), 0);
  EXPECT_EQ(p(2), 1);
}

TEST(TvDistance, Examples) {
  const Pmf w3(3, {{0, q(1, 3)}, {2, q(2, 3)}});
  const Pmf c3(3, {{0, q(1, 4)}, {2, q(3, 4)}});
  EXPECT_EQ(tv_distance(w3, w3), 0);
  EXPECT_EQ(tv_distance(Pmf::point_mass(1, 0), Pmf::point_mass(1, 1)), 1);
  EXPECT_EQ(tv_distance(w3, c3), q(1, 12));
}

TEST(TvDistance, MetricPropertiesOnRandomTriples) {
  std::mt19937_64 rng(20240901);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 9;
    const Pmf a = random_pmf(rng, n), b = random_pmf(rng, n), c = random_pmf(rng, n);
    EXPECT_EQ(tv_distance(a, b), tv_distance(b, a));
    EXPECT_EQ(tv_distance(a, a), 0);
    EXPECT_LE(tv_distance(a, c), tv_distance(a, b) + tv_distance(b, c));
    EXPECT_GE(tv_distance(a, b), 0);
    EXPECT_LE(tv_distance(a, b), 1);
  }
}

TEST(TvDistance, EqualsSupremumOverEvents) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 6;
    const Pmf a = random_pmf(rng, n), b = random_pmf(rng, n);
    Rational best = 0;
    for (unsigned set = 0; set < (1u << (n + 1)); ++set) {
      Rational diff = 0;
      for (int i = 0; i <= n; ++i)
        if (set >> i & 1u) diff += a(i) - b(i);
      best = std::max(best, Rational(abs(diff)));
    }
    EXPECT_EQ(tv_distance(a, b), best);
  }
}

TEST(MeanVar, Examples) {
  auto mv = pmf_mean_var(Pmf::point_mass(9, 5));
  EXPECT_EQ(mv.mean, 5);
  EXPECT_EQ(mv.variance, 0);
  mv = pmf_mean_var(Pmf(2, {{0, q(1, 2)}, {2, q(1, 2)}}));
  EXPECT_EQ(mv.mean, 1);
  EXPECT_EQ(mv.variance, 1);
  mv = pmf_mean_var(Pmf(3, {{0, q(1, 3)}, {2, q(2, 3)}}));
  EXPECT_EQ(mv.mean, q(4, 3));
  EXPECT_EQ(mv.variance, q(8, 9));
}
