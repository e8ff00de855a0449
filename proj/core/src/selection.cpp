#include "compkern/selection.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "compkern/error.hpp"
#include "compkern/parallel.hpp"
#include "compkern/rng.hpp"
#include "text_util.hpp"

namespace compkern {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kOuterStream = 0;
constexpr std::uint64_t kFinalStream = 1'000'003;

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& k, const std::vector<std::size_t>& rows,
                          const std::vector<std::size_t>& cols) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          k(static_cast<Eigen::Index>(rows[i]), static_cast<Eigen::Index>(cols[j]));
    }
  }
  return out;
}

Eigen::VectorXd subvector(const Eigen::VectorXd& v, const std::vector<std::size_t>& idx) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[static_cast<Eigen::Index>(idx[i])];
  return out;
}

double score(const Eigen::VectorXd& pred, const Eigen::VectorXd& y, Task task) {
  return task == Task::kRegression ? mean_squared_error(pred, y) : sign_accuracy(pred, y);
}

// True when a beats b under the task's ordering; NaN never wins.
bool better(double a, double b, Task task) {
  if (std::isnan(a)) return false;
  if (std::isnan(b)) return true;
  return task == Task::kRegression ? a < b : a > b;
}

void split_by_fold(const std::vector<std::size_t>& subset, const std::vector<std::size_t>& folds,
                   std::size_t f, std::vector<std::size_t>& train, std::vector<std::size_t>& val) {
  train.clear();
  val.clear();
  for (std::size_t i = 0; i < subset.size(); ++i) {
    (folds[i] == f ? val : train).push_back(subset[i]);
  }
}

}  // namespace

std::vector<std::size_t> assign_folds(const Eigen::VectorXd& y, std::size_t k, Task task,
                                      std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(y.size());
  if (k < 2) throw Error(ErrorCode::kInvalidParameters, "need at least 2 folds");
  if (n < k) {
    throw Error(ErrorCode::kFoldTooSmall, std::to_string(n) + " samples cannot fill " +
                                              std::to_string(k) + " folds");
  }
  Rng rng(seed);
  std::vector<std::size_t> fold(n, 0);
  if (task == Task::kRegression) {
    const auto perm = random_permutation(n, rng);
    for (std::size_t r = 0; r < n; ++r) fold[perm[r]] = r % k;
    return fold;
  }
  std::map<double, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < n; ++i) classes[y[static_cast<Eigen::Index>(i)]].push_back(i);
  if (classes.size() < 2) {
    throw Error(ErrorCode::kSingleClassFold, "only one class present; stratified folds impossible");
  }
  std::size_t offset = 0;
  for (const auto& [label, members] : classes) {
    if (members.size() < 2) {
      std::ostringstream msg;
      msg << "class " << label << " has " << members.size()
          << " member(s); every training split would miss it";
      throw Error(ErrorCode::kSingleClassFold, msg.str());
    }
    const auto perm = random_permutation(members.size(), rng);
    for (std::size_t r = 0; r < members.size(); ++r) fold[members[perm[r]]] = (offset + r) % k;
    offset += members.size();
  }
  return fold;
}

LambdaChoice cv_select_lambda(const Eigen::MatrixXd& k, const Eigen::VectorXd& y,
                              const std::vector<std::size_t>& subset,
                              const std::vector<double>& lambdas, std::size_t n_folds, Task task,
                              std::uint64_t seed) {
  if (lambdas.empty()) throw Error(ErrorCode::kInvalidParameters, "empty lambda grid");
  const Eigen::VectorXd ysub = subvector(y, subset);
  const auto folds = assign_folds(ysub, n_folds, task, seed);

  std::vector<double> sums(lambdas.size(), 0.0);
  std::vector<std::size_t> train, val;
  for (std::size_t f = 0; f < n_folds; ++f) {
    split_by_fold(subset, folds, f, train, val);
    if (train.size() < 2 || val.empty()) {
      throw Error(ErrorCode::kFoldTooSmall, "inner fold leaves fewer than 2 training samples");
    }
    const Eigen::MatrixXd k_tr = submatrix(k, train, train);
    const Eigen::MatrixXd k_va = submatrix(k, val, train);
    const Eigen::VectorXd y_tr = subvector(y, train);
    const Eigen::VectorXd y_va = subvector(y, val);
    const RidgePath path(k_tr, y_tr);
    for (std::size_t l = 0; l < lambdas.size(); ++l) {
      if (std::isnan(sums[l])) continue;
      Eigen::VectorXd alpha;
      double intercept = path.intercept();
      if (auto a = path.alpha(lambdas[l])) {
        alpha = std::move(*a);
      } else {
        try {
          KrrSolution sol = solve_krr(k_tr, y_tr, lambdas[l]);
          alpha = std::move(sol.alpha);
          intercept = sol.intercept;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kSolveFailure) throw;
          sums[l] = kNaN;
          continue;
        }
      }
      const Eigen::VectorXd pred = (k_va * alpha).array() + intercept;
      sums[l] += score(pred, y_va, task);
    }
  }

  LambdaChoice choice;
  choice.mean_scores.resize(lambdas.size());
  double best = kNaN;
  for (std::size_t l = 0; l < lambdas.size(); ++l) {
    choice.mean_scores[l] = sums[l] / static_cast<double>(n_folds);
    if (better(choice.mean_scores[l], best, task)) {
      best = choice.mean_scores[l];
      choice.index = l;
    }
  }
  if (std::isnan(best)) {
    throw Error(ErrorCode::kSolveFailure, "every lambda failed to solve in cross-validation");
  }
  choice.lambda = lambdas[choice.index];
  return choice;
}

std::string SelectionReport::to_csv() const {
  std::ostringstream out;
  out << "kernel,fold,score,lambda\n";
  for (std::size_t k = 0; k < kernels.size(); ++k) {
    const std::string label = detail::csv_escape(kernels[k].label());
    for (std::size_t f = 0; f < fold_scores[k].size(); ++f) {
      out << label << ',' << f << ',' << detail::format_double(fold_scores[k][f]) << ','
          << detail::format_double(fold_lambdas[k][f]) << '\n';
    }
    out << label << ",mean," << detail::format_double(mean_scores[k]) << ",\n";
  }
  out << detail::csv_escape(kernels[winner].label()) << ",final,"
      << detail::format_double(final_cv_score) << ',' << detail::format_double(final_lambda)
      << '\n';
  return out.str();
}

void SelectionReport::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << to_csv();
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

SelectionResult select_model(const CompositionList& x, const Eigen::VectorXd& y,
                             const ParamGrid& grid, const SelectionOptions& options) {
  const std::size_t n = x.size();
  if (options.n_outer < 2 || options.n_inner < 2) {
    throw Error(ErrorCode::kInvalidParameters, "N_out and N_in must both be >= 2");
  }
  if (static_cast<std::size_t>(y.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch, "compositions and responses differ in length");
  }
  if (grid.kernels.empty() || grid.lambdas.empty()) {
    throw Error(ErrorCode::kInvalidParameters, "kernel grid and lambda grid must be nonempty");
  }
  common_dimension(x);
  const Task task = options.task;
  if (task == Task::kClassification) {
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      if (y[i] != 1.0 && y[i] != -1.0) {
        throw Error(ErrorCode::kNonBinaryLabels, "classification labels must be -1 or +1");
      }
    }
  }

  SelectionReport report;
  report.kernels = grid.kernels;
  report.seed = options.seed;
  report.task = task;
  report.outer_folds =
      assign_folds(y, options.n_outer, task, derive_seed(options.seed, kOuterStream));

  const std::size_t nk = grid.kernels.size();
  const std::size_t nf = options.n_outer;
  report.fold_scores.assign(nk, std::vector<double>(nf, kNaN));
  report.fold_lambdas.assign(nk, std::vector<double>(nf, kNaN));
  report.mean_scores.assign(nk, kNaN);

  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;

  // Every outer training split must support the inner CV; check before the sweep.
  {
    std::vector<std::size_t> train, val;
    for (std::size_t f = 0; f < nf; ++f) {
      split_by_fold(all, report.outer_folds, f, train, val);
      if (train.size() < options.n_inner || val.empty()) {
        throw Error(ErrorCode::kFoldTooSmall,
                    "outer fold " + std::to_string(f) + " leaves " + std::to_string(train.size()) +
                        " training samples for " + std::to_string(options.n_inner) +
                        " inner folds");
      }
    }
  }

  parallel_for(nk, [&](std::size_t ki) {
    const Eigen::MatrixXd k = gram_entries(grid.kernels[ki], x);
    std::vector<std::size_t> train, val;
    double total = 0.0;
    for (std::size_t f = 0; f < nf; ++f) {
      split_by_fold(all, report.outer_folds, f, train, val);
      try {
        const LambdaChoice choice = cv_select_lambda(k, y, train, grid.lambdas, options.n_inner,
                                                     task, derive_seed(options.seed, 1 + f));
        const KrrSolution sol =
            solve_krr(submatrix(k, train, train), subvector(y, train), choice.lambda);
        const Eigen::VectorXd pred = (submatrix(k, val, train) * sol.alpha).array() + sol.intercept;
        report.fold_scores[ki][f] = score(pred, subvector(y, val), task);
        report.fold_lambdas[ki][f] = choice.lambda;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kSolveFailure) throw;
      }
      total += report.fold_scores[ki][f];
    }
    report.mean_scores[ki] = total / static_cast<double>(nf);
  });

  double best = kNaN;
  for (std::size_t ki = 0; ki < nk; ++ki) {
    if (better(report.mean_scores[ki], best, task)) {
      best = report.mean_scores[ki];
      report.winner = ki;
    }
  }
  if (std::isnan(best)) {
    throw Error(ErrorCode::kSolveFailure, "no kernel in the grid could be fitted");
  }

  const KernelSpec& spec = grid.kernels[report.winner];
  const Eigen::MatrixXd k = gram_entries(spec, x);
  const LambdaChoice final_choice = cv_select_lambda(
      k, y, all, grid.lambdas, options.n_inner, task, derive_seed(options.seed, kFinalStream));
  report.final_lambda = final_choice.lambda;
  report.final_cv_score = final_choice.mean_scores[final_choice.index];
  const KrrSolution sol = solve_krr(k, y, final_choice.lambda);
  FittedModel model(x, sol.alpha, sol.intercept, spec, final_choice.lambda, task);
  return {std::move(report), std::move(model)};
}

}  // namespace compkern
