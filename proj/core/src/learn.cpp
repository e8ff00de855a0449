#include "compkern/learn.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "compkern/error.hpp"
#include "compkern/parallel.hpp"

namespace compkern {

std::string_view task_name(Task task) {
  return task == Task::kRegression ? "regression" : "classification";
}

Task parse_task(std::string_view name) {
  if (name == "regression") return Task::kRegression;
  if (name == "classification") return Task::kClassification;
  throw Error(ErrorCode::kInvalidParameters,
              "task must be 'regression' or 'classification', got '" + std::string(name) + "'");
}

namespace {

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kInvalidParameters, "lambda must be finite and > 0");
  }
}

bool factor_ok(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  return llt.info() == Eigen::Success && llt.matrixLLT().diagonal().allFinite() &&
         (llt.matrixLLT().diagonal().array() > 0.0).all();
}

}  // namespace

KrrSolution solve_krr(const Eigen::MatrixXd& k, const Eigen::VectorXd& y, double lambda) {
  check_lambda(lambda);
  const Eigen::Index n = k.rows();
  if (k.cols() != n || y.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "Gram matrix and response sizes disagree");
  }
  if (n == 0) throw Error(ErrorCode::kInvalidParameters, "cannot fit on zero samples");
  if (!k.allFinite()) throw Error(ErrorCode::kSolveFailure, "Gram matrix has non-finite entries");

  KrrSolution sol;
  sol.intercept = y.mean();
  const Eigen::VectorXd yc = y.array() - sol.intercept;

  Eigen::MatrixXd a = k;
  a.diagonal().array() += static_cast<double>(n) * lambda;
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (!factor_ok(llt)) {
    const double jitter = 1e-10 * std::abs(k.trace()) / static_cast<double>(n);
    a.diagonal().array() += jitter;
    llt.compute(a);
    sol.jittered = true;
    if (!factor_ok(llt)) {
      throw Error(ErrorCode::kSolveFailure,
                  "K + n*lambda*I is not positive definite even after diagonal jitter");
    }
  }
  sol.alpha = llt.solve(yc);
  // One step of iterative refinement tightens the residual for ill-conditioned K.
  const Eigen::VectorXd resid = yc - a * sol.alpha;
  sol.alpha += llt.solve(resid);
  if (!sol.alpha.allFinite()) throw Error(ErrorCode::kSolveFailure, "solution is not finite");
  return sol;
}

FittedModel::FittedModel(CompositionList train_x, Eigen::VectorXd alpha, double intercept,
                         KernelSpec spec, double lambda, Task task)
    : train_x_(std::move(train_x)),
      alpha_(std::move(alpha)),
      intercept_(intercept),
      lambda_(lambda),
      task_(task) {
  if (train_x_.empty()) throw Error(ErrorCode::kInvalidParameters, "model has no training points");
  if (static_cast<std::size_t>(alpha_.size()) != train_x_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "alpha length differs from training size");
  }
  const std::size_t p = common_dimension(train_x_);
  evaluator_ = std::make_shared<const KernelEvaluator>(std::move(spec), p);
  auto prep = std::make_shared<std::vector<KernelEvaluator::Prepared>>(train_x_.size());
  parallel_for(train_x_.size(), [&](std::size_t i) { (*prep)[i] = evaluator_->prepare(train_x_[i]); });
  prepared_ = std::move(prep);
}

double FittedModel::decision(const Composition& x) const {
  const auto px = evaluator_->prepare(x);
  double acc = 0.0;
  const auto& train = *prepared_;
  for (std::size_t i = 0; i < train.size(); ++i) {
    acc += alpha_[static_cast<Eigen::Index>(i)] * evaluator_->eval(train[i], px);
  }
  return intercept_ + acc;
}

Eigen::VectorXd FittedModel::predict(const CompositionList& x_new) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(x_new.size()));
  parallel_for(x_new.size(),
               [&](std::size_t i) { out[static_cast<Eigen::Index>(i)] = decision(x_new[i]); });
  return out;
}

Eigen::VectorXd FittedModel::predict_labels(const CompositionList& x_new) const {
  Eigen::VectorXd d = predict(x_new);
  for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = d[i] >= 0.0 ? 1.0 : -1.0;
  return d;
}

FittedModel fit_krr(const CompositionList& x, const Eigen::VectorXd& y, const KernelSpec& spec,
                    double lambda, Task task) {
  if (x.size() < 2) throw Error(ErrorCode::kInvalidParameters, "fit needs at least 2 samples");
  if (static_cast<std::size_t>(y.size()) != x.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "got " + std::to_string(x.size()) +
                                                   " compositions but " +
                                                   std::to_string(y.size()) + " responses");
  }
  if (task == Task::kClassification) {
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      if (y[i] != 1.0 && y[i] != -1.0) {
        throw Error(ErrorCode::kNonBinaryLabels, "classification labels must be -1 or +1");
      }
    }
  }
  const Eigen::MatrixXd k = gram_entries(spec, x);
  KrrSolution sol = solve_krr(k, y, lambda);
  return FittedModel(x, std::move(sol.alpha), sol.intercept, spec, lambda, task);
}

double mean_squared_error(const Eigen::VectorXd& pred, const Eigen::VectorXd& y) {
  if (pred.size() != y.size() || y.size() == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "prediction and response sizes disagree");
  }
  return (pred - y).squaredNorm() / static_cast<double>(y.size());
}

double sign_accuracy(const Eigen::VectorXd& decision, const Eigen::VectorXd& labels) {
  if (decision.size() != labels.size() || labels.size() == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "decision and label sizes disagree");
  }
  Eigen::Index hits = 0;
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    const double s = decision[i] >= 0.0 ? 1.0 : -1.0;
    if (s == labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(labels.size());
}

RidgePath::RidgePath(const Eigen::MatrixXd& k, const Eigen::VectorXd& y) {
  if (k.rows() != y.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "Gram matrix and response sizes disagree");
  }
  intercept_ = y.size() > 0 ? y.mean() : 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(k);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kSolveFailure, "eigendecomposition of the Gram matrix failed");
  }
  q_ = solver.eigenvectors();
  eig_ = solver.eigenvalues();
  qty_ = q_.transpose() * (y.array() - intercept_).matrix();
}

std::optional<Eigen::VectorXd> RidgePath::alpha(double lambda) const {
  check_lambda(lambda);
  const double shift = static_cast<double>(eig_.size()) * lambda;
  Eigen::VectorXd scaled(eig_.size());
  for (Eigen::Index i = 0; i < eig_.size(); ++i) {
    const double d = eig_[i] + shift;
    if (!(d > 0.0)) return std::nullopt;
    scaled[i] = qty_[i] / d;
  }
  return q_ * scaled;
}

}  // namespace compkern
