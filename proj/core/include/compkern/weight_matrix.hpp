#pragma once

#include <filesystem>

#include <Eigen/Core>

namespace compkern {

// Symmetric, entrywise nonnegative, positive semi-definite p x p matrix of
// prior similarities between composition coordinates.
class WeightMatrix {
 public:
  // Validates exact symmetry, finiteness, nonnegativity (InvalidWeight) and
  // the PSD rule min_eig >= -1e-8 * max(1, max_eig) (NotPSD).
  static WeightMatrix from_matrix(Eigen::MatrixXd entries);

  static WeightMatrix identity(std::size_t p);

  // Headerless CSV, p rows of p comma-separated values.
  static WeightMatrix read_csv(const std::filesystem::path& path);
  void write_csv(const std::filesystem::path& path) const;

  std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXd& matrix() const { return entries_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double min_eig() const { return min_eig_; }
  // Row sums, cached because several weighted kernels use them.
  const Eigen::VectorXd& row_sums() const { return row_sums_; }

 private:
  WeightMatrix(Eigen::MatrixXd entries, double min_eig);

  Eigen::MatrixXd entries_;
  Eigen::VectorXd row_sums_;
  double min_eig_ = 0.0;
};

}  // namespace compkern
