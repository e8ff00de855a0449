#include <algorithm>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "compkern/rng.hpp"

using namespace compkern;

TEST(Rng, MatchesSplitMix64Reference) {
  // Reference SplitMix64: state += golden; output = finalizer(state).
  std::uint64_t state = 12345;
  Rng rng(12345);
  for (int i = 0; i < 5; ++i) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    EXPECT_EQ(rng.next_u64(), z);
  }
}

TEST(Rng, SameSeedSameStream) {
  Rng a(7), b(7), c(8);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.normal();
    EXPECT_EQ(x, b.normal());
    differs = differs || x != c.normal();
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, UniformRangeAndMoments) {
  Rng rng(1);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sq += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 0.005);
  EXPECT_NEAR(sq / n - 0.25, 1.0 / 12.0, 0.005);
}

TEST(Rng, NormalMoments) {
  Rng rng(2);
  double sum = 0.0, sq = 0.0, cube = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
    cube += z * z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.01);
  EXPECT_NEAR(cube / n, 0.0, 0.03);
}

TEST(Rng, UniformIndexCoversRange) {
  Rng rng(3);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 70000; ++i) ++hits[rng.uniform_index(7)];
  for (int h : hits) EXPECT_NEAR(h, 10000, 500);
}

TEST(Rng, PermutationIsBijective) {
  Rng rng(4);
  for (std::size_t n : {0u, 1u, 2u, 17u}) {
    auto perm = random_permutation(n, rng);
    std::sort(perm.begin(), perm.end());
    std::vector<std::size_t> want(n);
    std::iota(want.begin(), want.end(), std::size_t{0});
    EXPECT_EQ(perm, want);
  }
}

TEST(Rng, DerivedSeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 50; ++s) seen.insert(derive_seed(99, s));
  EXPECT_EQ(seen.size(), 50u);
  EXPECT_EQ(derive_seed(5, 3), derive_seed(5, 3));
}
