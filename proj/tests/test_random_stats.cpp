#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "hypdiam/random.hpp"
#include "hypdiam/stats.hpp"

using namespace hypdiam;

TEST(Random, SeedsAreDeterministicAndDistinct) {
  EXPECT_EQ(derive_seed(1, 64, 0), derive_seed(1, 64, 0));
  std::set<std::uint64_t> seen;
  for (std::uint64_t g : {64, 128, 256}) {
    for (std::uint64_t t = 0; t < 100; ++t) {
      seen.insert(derive_seed(1, g, t));
    }
  }
  EXPECT_EQ(seen.size(), 300u);
  EXPECT_NE(derive_seed(1, 64, 0), derive_seed(2, 64, 0));
  EXPECT_NE(splitmix64(0), 0u);
}

TEST(Random, BelowIsUniform) {
  Rng rng(42);
  std::vector<std::int64_t> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const auto x = rng.below(7);
    ASSERT_LT(x, 7u);
    ++counts[x];
  }
  const double stat = chi_square_statistic(counts, std::vector<double>(7, n / 7.0));
  EXPECT_GT(chi_square_pvalue(stat, 6), 1e-4);
}

TEST(Random, UnitRange) {
  Rng rng(1);
  double lo = 1, hi = 0, sum = 0;
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.unit();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_GE(lo, 0.0);
  EXPECT_LT(hi, 1.0);
  EXPECT_NEAR(sum / 10000, 0.5, 0.02);
}

TEST(Random, ShuffleIsPermutation) {
  Rng rng(9);
  std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  rng.shuffle(v);
  std::multiset<int> s(v.begin(), v.end());
  EXPECT_EQ(s, (std::multiset<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}));
}

TEST(Stats, ChiSquareKnownValues) {
  // dof 2 is exponential with mean 2.
  EXPECT_NEAR(chi_square_pvalue(3.0, 2), std::exp(-1.5), 1e-12);
  EXPECT_NEAR(chi_square_critical(0.05, 1), 3.841458820694124, 1e-9);
  EXPECT_NEAR(chi_square_pvalue(chi_square_critical(1e-3, 14), 14), 1e-3, 1e-12);
  EXPECT_DOUBLE_EQ(chi_square_statistic({10, 20}, {15, 15}), 25.0 / 15 * 2);
}

TEST(Stats, WilsonInterval) {
  const Interval w = wilson_interval(0, 200, 0.99);
  EXPECT_DOUBLE_EQ(w.lo, 0.0);
  EXPECT_NEAR(w.hi, 0.0321, 5e-4);
  const Interval h = wilson_interval(50, 100, 0.95);
  EXPECT_NEAR(h.lo, 0.4038, 1e-3);
  EXPECT_NEAR(h.hi, 0.5962, 1e-3);
}

TEST(Stats, MedianAndFit) {
  EXPECT_DOUBLE_EQ(median({3, 1, 2}), 2.0);
  EXPECT_DOUBLE_EQ(median({4, 1, 2, 3}), 2.5);
  const LinearFit f = least_squares({1, 2, 3, 4}, {3, 5, 7, 9});
  EXPECT_NEAR(f.slope, 2.0, 1e-12);
  EXPECT_NEAR(f.intercept, 1.0, 1e-12);
}

TEST(Stats, KolmogorovSmirnov) {
  std::vector<double> a, b, c;
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    a.push_back(rng.unit());
    b.push_back(rng.unit());
    c.push_back(rng.unit() + 0.3);
  }
  EXPECT_GT(ks_two_sample(a, b).pvalue, 1e-3);
  EXPECT_LT(ks_two_sample(a, c).pvalue, 1e-6);
  EXPECT_DOUBLE_EQ(ks_two_sample({1, 2, 3}, {1, 2, 3}).statistic, 0.0);
}
