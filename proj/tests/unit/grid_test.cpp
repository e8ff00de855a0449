#include <map>

#include <gtest/gtest.h>

#include "compkern/error.hpp"
#include "compkern/grid.hpp"
#include "compkern/kernels.hpp"
#include "oracles.hpp"

using namespace compkern;

TEST(MedianHeuristic, SmallExamples) {
  const auto a = oracle::comp({1.0, 0.0}), b = oracle::comp({0.0, 1.0});
  // Squared Euclidean distance between the two vertices is 2.
  EXPECT_DOUBLE_EQ(median_heuristic({a, b}), 2.0);
  EXPECT_THROW(median_heuristic({a, a}), Error);
}

TEST(MedianHeuristic, MiddleOrderStatistic) {
  // Points on a line inside the simplex with pairwise squared distances 2*{d}.
  const auto x0 = oracle::comp({0.5, 0.5, 0.0});
  const auto x1 = oracle::comp({0.5 + 0.1, 0.5 - 0.1, 0.0});
  const auto x2 = oracle::comp({0.5 + 0.3, 0.5 - 0.3, 0.0});
  // Squared distances: 2*0.01, 2*0.09, 2*0.04 -> median 0.08.
  EXPECT_NEAR(median_heuristic({x0, x1, x2}), 0.08, 1e-15);
}

TEST(MedianHeuristic, BoundedOnSimplex) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto xs = oracle::random_simplex(15, 2 + seed % 7, seed, 0.5);
    const double m = median_heuristic(xs);
    EXPECT_GT(m, 0.0);
    EXPECT_LE(m, 2.0);
  }
}

TEST(Geomspace, EndpointsAndRatio) {
  const auto g = geomspace(1e-5, 1e2, 40);
  ASSERT_EQ(g.size(), 40u);
  EXPECT_EQ(g.front(), 1e-5);
  EXPECT_EQ(g.back(), 1e2);
  for (std::size_t i = 1; i + 1 < g.size(); ++i) EXPECT_NEAR(g[i + 1] / g[i], g[1] / g[0], 1e-12);
  EXPECT_EQ(default_lambdas(), g);
}

TEST(DefaultGrid, CompositionOf55Kernels) {
  const auto xs = oracle::random_simplex(30, 6, 1, 0.3);
  const auto grid = default_grid(xs);
  ASSERT_EQ(grid.kernels.size(), 55u);
  std::map<KernelFamily, int> count;
  for (const auto& k : grid.kernels) ++count[k.family];
  EXPECT_EQ(count[KernelFamily::kLinear], 1);
  EXPECT_EQ(count[KernelFamily::kRbf], 7);
  EXPECT_EQ(count[KernelFamily::kGeneralizedJS], 9);
  EXPECT_EQ(count[KernelFamily::kHilbertian], 8);
  EXPECT_EQ(count[KernelFamily::kAitchison], 9);
  EXPECT_EQ(count[KernelFamily::kAitchisonRbf], 15);
  EXPECT_EQ(count[KernelFamily::kHeatDiffusion], 6);
  EXPECT_EQ(grid.lambdas.size(), 40u);
}

TEST(DefaultGrid, GeneralizedJsPairs) {
  const auto grid = default_grid(oracle::random_simplex(20, 4, 2));
  std::vector<std::pair<double, double>> got;
  for (const auto& k : grid.kernels) {
    if (k.family == KernelFamily::kGeneralizedJS) got.emplace_back(k.a, k.b);
  }
  const std::vector<std::pair<double, double>> want = {
      {1, 0.5}, {1, 1}, {10, 0.5}, {10, 1}, {10, 10}, {kInf, 0.5}, {kInf, 1}, {kInf, 10}, {kInf, kInf}};
  EXPECT_EQ(got, want);
}

TEST(DefaultGrid, AitchisonShiftEndpoints) {
  const auto xs = oracle::random_simplex(20, 5, 3, 0.3);
  const double mu = min_nonzero_value(xs);
  const auto grid = default_grid(xs);
  std::vector<double> cs;
  for (const auto& k : grid.kernels) {
    if (k.family == KernelFamily::kAitchison) cs.push_back(k.c);
  }
  ASSERT_EQ(cs.size(), 9u);
  EXPECT_DOUBLE_EQ(cs.front(), mu / 2.0 * 1e-4);
  EXPECT_DOUBLE_EQ(cs.back(), std::min(mu / 2.0 * 1e4, 1e-2));
}

TEST(DefaultGrid, HeatTimesFollowSampleSize) {
  const auto xs = oracle::random_simplex(21, 4, 4);
  const auto grid = default_grid(xs);
  std::vector<double> ts;
  for (const auto& k : grid.kernels) {
    if (k.family == KernelFamily::kHeatDiffusion) ts.push_back(k.t);
  }
  const auto base = geomspace(1e-20, 10.0, 6);
  ASSERT_EQ(ts.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_NEAR(ts[i], std::pow(base[i], 2.0 / 20.0) / (4.0 * std::numbers::pi), 1e-15);
  }
}

TEST(DefaultGrid, AllKernelsPsdOnRandomPoints) {
  const auto xs = oracle::random_simplex(50, 10, 5);
  for (const auto& k : default_grid(xs).kernels) {
    const auto g = gram(k, xs);
    EXPECT_TRUE(g.psd()) << k.label() << " min eig " << g.min_eig_estimate;
  }
}
