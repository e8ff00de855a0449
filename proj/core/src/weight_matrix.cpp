#include "compkern/weight_matrix.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "compkern/error.hpp"
#include "compkern/spectral.hpp"
#include "text_util.hpp"

namespace compkern {

WeightMatrix::WeightMatrix(Eigen::MatrixXd entries, double min_eig)
    : entries_(std::move(entries)), min_eig_(min_eig) {
  row_sums_ = entries_.rowwise().sum();
}

WeightMatrix WeightMatrix::from_matrix(Eigen::MatrixXd entries) {
  if (entries.rows() != entries.cols() || entries.rows() < 1) {
    throw Error(ErrorCode::kInvalidWeight, "weight matrix must be square and nonempty");
  }
  const Eigen::Index p = entries.rows();
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      const double w = entries(i, j);
      if (!std::isfinite(w) || w < 0.0) {
        throw Error(ErrorCode::kInvalidWeight, "entry (" + std::to_string(i) + ", " +
                                                   std::to_string(j) +
                                                   ") must be finite and >= 0");
      }
      if (w != entries(j, i)) {
        throw Error(ErrorCode::kInvalidWeight, "weight matrix is not symmetric at (" +
                                                   std::to_string(i) + ", " +
                                                   std::to_string(j) + ")");
      }
    }
  }
  const SpectralRange range = spectral_range(entries);
  if (!is_psd(range)) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "minimum eigenvalue " << range.min_eig << " below tolerance (max eigenvalue "
        << range.max_eig << ")";
    throw Error(ErrorCode::kNotPSD, msg.str());
  }
  return WeightMatrix(std::move(entries), range.min_eig);
}

WeightMatrix WeightMatrix::identity(std::size_t p) {
  const auto n = static_cast<Eigen::Index>(p);
  return WeightMatrix(Eigen::MatrixXd::Identity(n, n), 1.0);
}

WeightMatrix WeightMatrix::read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open weight file " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    detail::strip_cr(line);
    if (detail::is_blank(line)) continue;
    std::vector<double> row;
    const auto cells = detail::split_csv_line(line);
    for (std::size_t col = 0; col < cells.size(); ++col) {
      double v = 0.0;
      if (!detail::parse_double(cells[col], v)) {
        throw ParseError("weight file " + path.string() + ": '" + cells[col] +
                             "' is not a number",
                         0, line_no, col + 1);
      }
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  const std::size_t p = rows.size();
  if (p == 0) throw Error(ErrorCode::kInvalidWeight, "weight file " + path.string() + " is empty");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  for (std::size_t i = 0; i < p; ++i) {
    if (rows[i].size() != p) {
      throw Error(ErrorCode::kInvalidWeight, "weight file row " + std::to_string(i + 1) +
                                                 " has " + std::to_string(rows[i].size()) +
                                                 " columns, expected " + std::to_string(p));
    }
    for (std::size_t j = 0; j < p; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return from_matrix(std::move(m));
}

void WeightMatrix::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write weight file " + path.string());
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
      if (j > 0) out << ',';
      out << detail::format_double(entries_(i, j));
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

}  // namespace compkern
