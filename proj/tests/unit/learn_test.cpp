#include <cmath>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "compkern/error.hpp"
#include "compkern/kernels.hpp"
#include "compkern/learn.hpp"
#include "oracles.hpp"

using namespace compkern;

namespace {

Eigen::VectorXd response(const CompositionList& xs) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    y[static_cast<Eigen::Index>(i)] = 3.0 * xs[i][0] - std::sin(4.0 * xs[i][1]);
  }
  return y;
}

}  // namespace

TEST(SolveKrr, MatchesDirectSolve) {
  const auto xs = oracle::random_simplex(25, 4, 1);
  const Eigen::VectorXd y = response(xs);
  const auto spec = KernelSpec::rbf(0.2);
  const Eigen::MatrixXd k = oracle::naive_gram(spec, xs);
  const double lambda = 1e-3;
  const auto sol = solve_krr(k, y, lambda);
  const Eigen::VectorXd centered = y.array() - y.mean();
  const Eigen::MatrixXd a = k + 25.0 * lambda * Eigen::MatrixXd::Identity(25, 25);
  const Eigen::VectorXd want = a.fullPivLu().solve(centered);
  EXPECT_NEAR(sol.intercept, y.mean(), 1e-15);
  EXPECT_LT((sol.alpha - want).cwiseAbs().maxCoeff(), 1e-9 * want.cwiseAbs().maxCoeff());
  EXPECT_FALSE(sol.jittered);
}

TEST(SolveKrr, JitterOnceThenFail) {
  const Eigen::VectorXd y = Eigen::Vector4d(1, 2, 3, 4);
  // Slightly indefinite: rescued by the one-off diagonal jitter.
  const Eigen::MatrixXd nearly = Eigen::MatrixXd::Ones(4, 4) - 1e-12 * Eigen::MatrixXd::Identity(4, 4);
  const auto sol = solve_krr(nearly, y, 1e-16);
  EXPECT_TRUE(sol.jittered);
  EXPECT_TRUE(sol.alpha.allFinite());
  // Clearly indefinite: still fails after jitter.
  Eigen::Matrix2d bad;
  bad << 1, 2, 2, 1;
  try {
    solve_krr(bad, Eigen::Vector2d(1, 2), 1e-6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSolveFailure);
  }
  EXPECT_THROW(solve_krr(nearly, y, 0.0), Error);
}

TEST(FitKrr, ConstantResponse) {
  const auto xs = oracle::random_simplex(12, 3, 2);
  const Eigen::VectorXd y = Eigen::VectorXd::Constant(12, 4.5);
  const auto model = fit_krr(xs, y, KernelSpec::linear(), 0.1);
  EXPECT_EQ(model.alpha(), Eigen::VectorXd::Zero(12));
  for (const auto& x : oracle::random_simplex(5, 3, 3)) EXPECT_EQ(model.decision(x), 4.5);
}

TEST(FitKrr, HugeLambdaShrinksToMean) {
  const auto xs = oracle::random_simplex(30, 5, 4);
  const Eigen::VectorXd y = response(xs);
  const auto model = fit_krr(xs, y, KernelSpec::aitchison(1e-2), 1e12);
  const auto pred = model.predict(oracle::random_simplex(10, 5, 5));
  EXPECT_LT((pred.array() - y.mean()).abs().maxCoeff(), 1e-4);
}

TEST(FitKrr, TinyLambdaInterpolates) {
  const auto xs = oracle::random_simplex(10, 4, 6);
  const Eigen::VectorXd y = response(xs);
  const auto spec = KernelSpec::rbf(0.1);
  const auto model = fit_krr(xs, y, spec, 1e-12);
  EXPECT_LT((model.predict(xs) - y).cwiseAbs().maxCoeff(), 1e-4);
  // Direct linear-solve oracle for the same system.
  const Eigen::MatrixXd k = oracle::naive_gram(spec, xs);
  const Eigen::VectorXd alpha =
      (k + 10.0 * 1e-12 * Eigen::MatrixXd::Identity(10, 10)).fullPivLu().solve(
          (y.array() - y.mean()).matrix());
  EXPECT_LT((model.alpha() - alpha).cwiseAbs().maxCoeff(), 1e-6 * alpha.cwiseAbs().maxCoeff());
}

TEST(FitKrr, PredictEdgeCases) {
  const auto xs = oracle::random_simplex(8, 3, 7);
  const auto model = fit_krr(xs, response(xs), KernelSpec::linear(), 0.01);
  EXPECT_EQ(model.predict({}).size(), 0);
  const FittedModel flat(xs, Eigen::VectorXd::Zero(8), 2.0, KernelSpec::linear(), 0.01,
                         Task::kRegression);
  EXPECT_EQ(flat.predict(xs), Eigen::VectorXd::Constant(8, 2.0));
  EXPECT_THROW(model.decision(oracle::comp({0.5, 0.5})), Error);
}

TEST(FitKrr, Classification) {
  const auto xs = oracle::random_simplex(40, 3, 8);
  Eigen::VectorXd y(40);
  for (Eigen::Index i = 0; i < 40; ++i) y[i] = xs[static_cast<std::size_t>(i)][0] > 1.0 / 3.0 ? 1.0 : -1.0;
  const auto model = fit_krr(xs, y, KernelSpec::rbf(0.1), 1e-4, Task::kClassification);
  const auto labels = model.predict_labels(xs);
  EXPECT_GE(sign_accuracy(model.predict(xs), y), 0.9);
  for (Eigen::Index i = 0; i < labels.size(); ++i) EXPECT_TRUE(labels[i] == 1.0 || labels[i] == -1.0);
  Eigen::VectorXd bad = y;
  bad[0] = 0.5;
  try {
    fit_krr(xs, bad, KernelSpec::linear(), 0.1, Task::kClassification);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonBinaryLabels);
  }
}

TEST(FitKrr, InputChecks) {
  const auto xs = oracle::random_simplex(5, 3, 9);
  EXPECT_THROW(fit_krr(xs, Eigen::VectorXd::Zero(4), KernelSpec::linear(), 0.1), Error);
  EXPECT_THROW(fit_krr({xs[0]}, Eigen::VectorXd::Zero(1), KernelSpec::linear(), 0.1), Error);
  EXPECT_THROW(fit_krr(xs, Eigen::VectorXd::Zero(5), KernelSpec::linear(), 0.0), Error);
}

TEST(Scores, Definitions) {
  EXPECT_DOUBLE_EQ(mean_squared_error(Eigen::Vector2d(1, 2), Eigen::Vector2d(0, 4)), 2.5);
  EXPECT_DOUBLE_EQ(sign_accuracy(Eigen::Vector3d(0.2, -1, 0), Eigen::Vector3d(1, 1, 1)), 2.0 / 3.0);
}

TEST(RidgePath, AgreesWithCholesky) {
  const auto xs = oracle::random_simplex(30, 5, 10);
  const Eigen::VectorXd y = response(xs);
  const Eigen::MatrixXd k = gram_entries(KernelSpec::generalized_js(1, 1), xs);
  const RidgePath path(k, y);
  for (double lambda : {1e-5, 1e-3, 0.1, 10.0}) {
    const auto a = path.alpha(lambda);
    ASSERT_TRUE(a.has_value());
    const auto sol = solve_krr(k, y, lambda);
    EXPECT_LT((*a - sol.alpha).cwiseAbs().maxCoeff(), 1e-7 * std::max(1.0, sol.alpha.cwiseAbs().maxCoeff()));
    EXPECT_DOUBLE_EQ(path.intercept(), sol.intercept);
  }
}
