#pragma once

// Two-step hierarchical cross-validation over a kernel grid.
//
// Step 1 scores every kernel by N_out outer folds; inside each outer training
// set an N_in-fold CV picks lambda. Step 2 reruns the N_in-fold CV on all data
// for the winning kernel and refits. Folds depend only on the seed (and the
// labels, for stratification), never on the grid.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "compkern/grid.hpp"
#include "compkern/learn.hpp"

namespace compkern {

struct SelectionOptions {
  std::size_t n_outer = 10;
  std::size_t n_inner = 5;
  std::uint64_t seed = 0;
  Task task = Task::kRegression;
};

// Fold index in [0, k) for every sample. Regression folds come from a seeded
// permutation dealt round-robin; classification deals each class separately
// so every fold sees both labels in proportion. Throws FoldTooSmall when
// n < k and SingleClassFold when a class has fewer than 2 members.
std::vector<std::size_t> assign_folds(const Eigen::VectorXd& y, std::size_t k, Task task,
                                      std::uint64_t seed);

struct LambdaChoice {
  double lambda = 0.0;
  std::size_t index = 0;
  std::vector<double> mean_scores;  // per lambda; NaN where every fit failed
};

// N_in-fold CV of one kernel over lambdas using the full Gram matrix `k`
// restricted to `subset`. Ties go to the earlier lambda.
LambdaChoice cv_select_lambda(const Eigen::MatrixXd& k, const Eigen::VectorXd& y,
                              const std::vector<std::size_t>& subset,
                              const std::vector<double>& lambdas, std::size_t n_folds, Task task,
                              std::uint64_t seed);

struct SelectionReport {
  std::vector<KernelSpec> kernels;
  // fold_scores[k][f]: score of kernel k on outer fold f; fold_lambdas likewise.
  std::vector<std::vector<double>> fold_scores;
  std::vector<std::vector<double>> fold_lambdas;
  std::vector<double> mean_scores;
  std::vector<std::size_t> outer_folds;  // fold index per sample
  std::size_t winner = 0;
  double final_lambda = 0.0;
  double final_cv_score = 0.0;  // step-2 mean inner score at final_lambda
  std::uint64_t seed = 0;
  Task task = Task::kRegression;

  const KernelSpec& winning_spec() const { return kernels[winner]; }

  // CSV with header kernel,fold,score,lambda; one row per kernel and fold
  // followed by a "mean" row per kernel, then one "final" row naming the
  // winner with its step-2 score and lambda. Numbers use 17 significant digits.
  std::string to_csv() const;
  void write_csv(const std::filesystem::path& path) const;
};

struct SelectionResult {
  SelectionReport report;
  FittedModel model;
};

SelectionResult select_model(const CompositionList& x, const Eigen::VectorXd& y,
                             const ParamGrid& grid, const SelectionOptions& options);

}  // namespace compkern
