#pragma once

// Kernel ridge regression and the +-1 ridge classifier.

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "compkern/composition.hpp"
#include "compkern/kernel_spec.hpp"
#include "compkern/kernels.hpp"

namespace compkern {

enum class Task { kRegression, kClassification };

std::string_view task_name(Task task);  // "regression" / "classification"
Task parse_task(std::string_view name);

// Solution of (K + n*lambda*I) alpha = y - mean(y).
struct KrrSolution {
  Eigen::VectorXd alpha;
  double intercept = 0.0;
  bool jittered = false;
};

// Cholesky solve on a precomputed Gram matrix. When the factorization fails,
// 1e-10 * trace(K) / n is added to the diagonal once; a second failure
// throws SolveFailure.
KrrSolution solve_krr(const Eigen::MatrixXd& k, const Eigen::VectorXd& y, double lambda);

// f(x) = intercept + sum_i alpha_i k(X_i, x).
class FittedModel {
 public:
  FittedModel(CompositionList train_x, Eigen::VectorXd alpha, double intercept, KernelSpec spec,
              double lambda, Task task);

  const CompositionList& train_x() const { return train_x_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }
  double intercept() const { return intercept_; }
  const KernelSpec& spec() const { return evaluator_->spec(); }
  double lambda() const { return lambda_; }
  Task task() const { return task_; }
  std::size_t dimension() const { return evaluator_->dimension(); }

  // Raw decision value f(x).
  double decision(const Composition& x) const;
  // Decision values for every row (regression predictions).
  Eigen::VectorXd predict(const CompositionList& x_new) const;
  // sign(f(x)) with sign(0) = +1.
  Eigen::VectorXd predict_labels(const CompositionList& x_new) const;

 private:
  CompositionList train_x_;
  Eigen::VectorXd alpha_;
  double intercept_;
  double lambda_;
  Task task_;
  std::shared_ptr<const KernelEvaluator> evaluator_;
  std::shared_ptr<const std::vector<KernelEvaluator::Prepared>> prepared_;
};

// Fits kernel ridge on (X, y). Classification expects labels in {-1, +1}.
FittedModel fit_krr(const CompositionList& x, const Eigen::VectorXd& y, const KernelSpec& spec,
                    double lambda, Task task = Task::kRegression);

// Out-of-fold scoring helpers. Lower MSE is better; higher accuracy is better.
double mean_squared_error(const Eigen::VectorXd& pred, const Eigen::VectorXd& y);
double sign_accuracy(const Eigen::VectorXd& decision, const Eigen::VectorXd& labels);

// Ridge solutions for many lambdas from one eigendecomposition of K.
class RidgePath {
 public:
  RidgePath(const Eigen::MatrixXd& k, const Eigen::VectorXd& y);

  // Dual coefficients for lambda; empty when some eigenvalue + n*lambda <= 0
  // (the caller then falls back to solve_krr).
  std::optional<Eigen::VectorXd> alpha(double lambda) const;
  double intercept() const { return intercept_; }

 private:
  Eigen::MatrixXd q_;
  Eigen::VectorXd eig_;
  Eigen::VectorXd qty_;
  double intercept_ = 0.0;
};

}  // namespace compkern
