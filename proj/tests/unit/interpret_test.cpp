#include <cmath>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "compkern/embed.hpp"
#include "compkern/error.hpp"
#include "compkern/interpret.hpp"
#include "compkern/learn.hpp"
#include "expect.hpp"
#include "oracles.hpp"

using namespace compkern;

namespace {

double logit(double z) { return std::log(z / (1.0 - z)); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST(Cfi, LogContrastRecoversBeta) {
  const LogContrast lc(Eigen::Vector3d(2.0, -1.0, -1.0));
  const auto xs = oracle::random_lognormal(100, 3, 1);
  const auto res = cfi(lc.predictor(), xs);
  oracle::expect_near(res.values, {2.0, -1.0, -1.0}, 1e-6);
  EXPECT_EQ(res.warning_count(), 0u);
  // Per sample as well.
  for (std::size_t i = 0; i < 5; ++i) {
    oracle::expect_near(cfi(lc.predictor(), {xs[i]}).values, {2.0, -1.0, -1.0}, 1e-6);
  }
  const LogContrast two(Eigen::Vector2d(1.0, -1.0));
  const auto xs2 = oracle::random_lognormal(100, 2, 2);
  EXPECT_LT((cfi(two.predictor(), xs2).values - two.cfi()).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Cfi, RatioFunction) {
  // f2(x) = x1 / (x1 + x2) is unchanged by rescaling x3.
  const Predictor f2 = [](const Composition& x) { return (1.0 - x[1] - x[2]) / (1.0 - x[2]); };
  const auto res = cfi(f2, oracle::random_lognormal(100, 3, 3));
  EXPECT_LT(std::abs(res.values[2]), 1e-6);
  EXPECT_LT(std::abs(res.values[0] + res.values[1]), 1e-8);
}

TEST(Cfi, ConstantAndVertexHandling) {
  const Predictor constant = [](const Composition&) { return 3.0; };
  const auto xs = oracle::random_simplex(20, 4, 4);
  EXPECT_EQ(cfi(constant, xs).values, Eigen::Vector4d::Zero());
  CompositionList with_vertex = xs;
  with_vertex.push_back(Composition::vertex(4, 2));
  const auto res = cfi(constant, with_vertex);
  EXPECT_EQ(res.warning_count(), 1u);
  EXPECT_EQ(res.skipped[2], 1u);
  EXPECT_THROW(cfi(constant, xs, 0.0), Error);
  EXPECT_THROW(cfi(constant, xs, 1.0), Error);
}

TEST(Cfi, SumsToZeroForFittedModels) {
  const auto xs = oracle::random_simplex(40, 5, 5);
  Eigen::VectorXd y(40);
  for (Eigen::Index i = 0; i < 40; ++i) {
    const auto& x = xs[static_cast<std::size_t>(i)];
    y[i] = std::sin(3.0 * x[0]) + x[1] * x[2];
  }
  for (const auto& spec : {KernelSpec::linear(), KernelSpec::rbf(0.2), KernelSpec::generalized_js(1, 1),
                           KernelSpec::aitchison(1e-3), KernelSpec::heat_diffusion(0.05)}) {
    const auto model = fit_krr(xs, y, spec, 1e-3);
    EXPECT_LT(std::abs(cfi(as_predictor(model), xs).values.sum()), 1e-6) << spec.label();
  }
}

TEST(Cpd, LogContrastShapeAndZeroCoefficient) {
  const LogContrast lc(Eigen::Vector3d(1.5, 0.0, -1.5));
  const auto xs = oracle::random_lognormal(100, 3, 6);
  const auto grid = default_cpd_grid();
  ASSERT_EQ(grid.size(), 100u);
  EXPECT_DOUBLE_EQ(grid.front(), 0.001);
  EXPECT_DOUBLE_EQ(grid.back(), 0.999);
  for (std::size_t j = 0; j < 3; ++j) {
    const auto curve = cpd(lc.predictor(), xs, j, grid);
    const auto closed = lc.cpd(j, grid, xs);
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const double r = curve.values[g] - lc.beta()[static_cast<Eigen::Index>(j)] * logit(grid[g]);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      EXPECT_NEAR(curve.values[g], closed[g], 1e-9);
    }
    EXPECT_LT(hi - lo, 1e-8);
    if (j == 1) {
      for (double v : curve.values) EXPECT_LT(std::abs(v), 1e-8);
    }
  }
}

TEST(Cpd, ConstantDropsAndErrors) {
  const Predictor constant = [](const Composition&) { return -2.0; };
  CompositionList xs = oracle::random_simplex(10, 3, 7);
  xs.push_back(Composition::vertex(3, 0));
  const auto grid = default_cpd_grid();
  const auto curve = cpd(constant, xs, 0, grid);
  EXPECT_EQ(curve.dropped, 1u);
  for (double v : curve.values) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(cpd(constant, {Composition::vertex(3, 0)}, 0, grid), Error);
  EXPECT_THROW(cpd(constant, xs, 0, {0.0, 0.5}), Error);
  EXPECT_THROW(cpd(constant, xs, 0, {0.5, 0.2}), Error);
  EXPECT_THROW(cpd(constant, xs, 5, grid), Error);
}

TEST(LogContrast, Validation) {
  EXPECT_THROW(LogContrast(Eigen::Vector2d(1.0, 1.0)), Error);
  const LogContrast zero(Eigen::Vector3d::Zero());
  const auto xs = oracle::random_simplex(10, 3, 8);
  EXPECT_EQ(cfi(zero.predictor(), xs).values, Eigen::Vector3d::Zero());
  EXPECT_EQ(zero(oracle::comp({1.0, 0.0, 0.0})), 0.0);
  const LogContrast lc(Eigen::Vector3d(1.0, -1.0, 0.0));
  EXPECT_THROW(lc(oracle::comp({1.0, 0.0, 0.0})), Error);
  EXPECT_NO_THROW(lc(oracle::comp({0.5, 0.5, 0.0})));
}

TEST(PcContribution, TrivialCasesAndOrderInvariance) {
  const auto xs = oracle::random_simplex(30, 4, 9);
  const Predictor constant = [](const Composition&) { return 1.0; };
  EXPECT_EQ(pc_contribution(constant, xs, 2.0), Eigen::Vector4d::Zero());
  const Predictor f = [](const Composition& x) { return x[0] - x[3]; };
  EXPECT_EQ(pc_contribution(f, xs, 1.0), Eigen::Vector4d::Zero());
  EXPECT_THROW(pc_contribution(f, xs, 0.0), Error);

  // Two clusters, first kernel PC, then the same data in reverse order.
  CompositionList data;
  for (const auto& x : oracle::random_simplex(20, 4, 10)) {
    data.push_back(psi(x, 0, 6.0));
    data.push_back(psi(x, 3, 6.0));
  }
  CompositionList reversed(data.rbegin(), data.rend());
  const auto m1 = kpca_fit(data, KernelSpec::linear(), 1);
  const auto m2 = kpca_fit(reversed, KernelSpec::linear(), 1);
  const auto c1 = pc_contribution(kpca_component(m1, 0), data, 2.0);
  const auto c2 = pc_contribution(kpca_component(m2, 0), reversed, 2.0);
  EXPECT_LT((c1 - c2).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, c1.cwiseAbs().maxCoeff()));
  EXPECT_GT(c1.cwiseAbs().maxCoeff(), 0.0);
}

TEST(CsvOutput, CfiFooterAndCpdLayout) {
  const auto dir = std::filesystem::temp_directory_path() / "compkern_interpret_test";
  std::filesystem::create_directories(dir);
  write_cfi_csv(dir / "cfi.csv", {"a", "b"}, Eigen::Vector2d(0.5, -0.5), true);
  EXPECT_EQ(slurp(dir / "cfi.csv"), "feature,value\na,0.5\nb,-0.5\nsum,0\n");
  CpdCurve c;
  c.coordinate = 1;
  c.grid = {0.25, 0.5};
  c.values = {1.0, 2.0};
  write_cpd_csv(dir / "cpd.csv", {"a", "b"}, {c});
  EXPECT_EQ(slurp(dir / "cpd.csv"), "feature,z,value\nb,0.25,1\nb,0.5,2\n");
  std::filesystem::remove_all(dir);
}
