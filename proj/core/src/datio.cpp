#include "compkern/datio.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "compkern/error.hpp"
#include "text_util.hpp"

namespace compkern {
namespace {

using Grid = std::vector<std::vector<std::string>>;

Grid read_grid(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  Grid grid;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    detail::strip_cr(line);
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (detail::is_blank(line)) continue;
    auto cells = detail::split_csv_line(line);
    if (grid.empty()) {
      width = cells.size();
    } else if (cells.size() != width) {
      throw ParseError(path.string() + ": line " + std::to_string(line_no) + " has " +
                           std::to_string(cells.size()) + " cells, header has " +
                           std::to_string(width),
                       0, line_no, std::min(cells.size(), width) + 1);
    }
    grid.push_back(std::move(cells));
  }
  if (grid.size() < 2) {
    throw ParseError(path.string() + ": need a header row and at least one data row", 0,
                     grid.size() + 1, 1);
  }
  if (width < 2) {
    throw ParseError(path.string() + ": need a sample id column and at least one feature", 0, 1,
                     1);
  }
  return grid;
}

Grid transpose_grid(const Grid& g) {
  Grid out(g.front().size(), std::vector<std::string>(g.size()));
  for (std::size_t r = 0; r < g.size(); ++r) {
    for (std::size_t c = 0; c < g[r].size(); ++c) out[c][r] = g[r][c];
  }
  return out;
}

bool all_numeric(const std::vector<std::string>& v) {
  double tmp = 0.0;
  return std::all_of(v.begin(), v.end(), [&](const std::string& s) { return detail::parse_double(s, tmp); });
}

}  // namespace

CountTable read_count_table(const std::filesystem::path& path, const std::string& label_column,
                            bool transpose) {
  Grid grid = read_grid(path);
  if (transpose) grid = transpose_grid(grid);
  const auto& header = grid.front();

  std::size_t label_idx = 0;
  if (!label_column.empty()) {
    const auto it = std::find(header.begin() + 1, header.end(), label_column);
    if (it == header.end()) {
      throw Error(ErrorCode::kMissingColumn,
                  "label column '" + label_column + "' not found in " + path.string());
    }
    label_idx = static_cast<std::size_t>(it - header.begin());
  }

  CountTable t;
  t.label_column = label_column;
  std::vector<std::size_t> feature_cols;
  for (std::size_t c = 1; c < header.size(); ++c) {
    if (c == label_idx) continue;
    feature_cols.push_back(c);
    t.feature_names.push_back(header[c]);
  }
  if (feature_cols.empty()) {
    throw ParseError(path.string() + ": no feature columns", 0, 1, 1);
  }
  {
    std::set<std::string> seen;
    for (const auto& name : t.feature_names) {
      if (!seen.insert(name).second) {
        throw ParseError(path.string() + ": duplicate feature name '" + name + "'", 0, 1, 1);
      }
    }
  }

  const std::size_t n = grid.size() - 1;
  t.counts.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(feature_cols.size()));
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = grid[r + 1];
    // Positions refer to the file as written, which is transposed when requested.
    auto where = [&](std::size_t col) {
      return transpose ? std::make_pair(col + 1, r + 2) : std::make_pair(r + 2, col + 1);
    };
    t.sample_ids.push_back(row[0]);
    for (std::size_t k = 0; k < feature_cols.size(); ++k) {
      const std::string& cell = row[feature_cols[k]];
      const auto [line, column] = where(feature_cols[k]);
      if (detail::is_blank(cell)) {
        throw ParseError(path.string() + ": missing value for sample '" + row[0] + "', feature '" +
                             t.feature_names[k] + "'",
                         0, line, column);
      }
      double v = 0.0;
      if (!detail::parse_double(cell, v)) {
        throw ParseError(path.string() + ": '" + cell + "' is not a number", 0, line, column);
      }
      if (!std::isfinite(v) || v < 0.0) {
        throw Error(ErrorCode::kInvalidComposition, "sample '" + row[0] + "', feature '" +
                                                        t.feature_names[k] + "': value " + cell +
                                                        " must be finite and >= 0");
      }
      t.counts(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = v;
    }
    if (label_idx > 0) {
      const std::string& cell = row[label_idx];
      if (detail::is_blank(cell)) {
        const auto [line, column] = where(label_idx);
        throw ParseError(path.string() + ": missing label for sample '" + row[0] + "'", 0, line,
                         column);
      }
      t.labels.push_back(cell);
    }
  }
  return t;
}

Dataset to_dataset(const CountTable& table, Task task) {
  Dataset d;
  d.feature_names = table.feature_names;
  d.sample_ids = table.sample_ids;
  d.task = task;
  d.label_column = table.label_column;
  const Eigen::Index n = table.counts.rows();
  const Eigen::Index p = table.counts.cols();
  d.x.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd row = table.counts.row(i).transpose();
    const double sum = row.sum();
    const std::span<const double> cells(row.data(), static_cast<std::size_t>(p));
    try {
      if (std::abs(sum - 1.0) <= kSimplexTolerance) {
        d.x.push_back(Composition::from_values(cells));
      } else {
        d.x.push_back(Composition::from_counts(cells));
      }
    } catch (const Error& e) {
      const std::string id = table.sample_ids[static_cast<std::size_t>(i)];
      if (e.code() == ErrorCode::kZeroSumRow) {
        throw Error(ErrorCode::kZeroSumRow, "sample '" + id + "' has zero total count");
      }
      throw Error(e.code(), "sample '" + id + "': " + e.what());
    }
  }

  if (table.labels.empty()) return d;
  d.y.resize(n);
  if (task == Task::kRegression) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double v = 0.0;
      const auto& cell = table.labels[static_cast<std::size_t>(i)];
      if (!detail::parse_double(cell, v) || !std::isfinite(v)) {
        throw ParseError("label '" + cell + "' of sample '" +
                             table.sample_ids[static_cast<std::size_t>(i)] +
                             "' is not a finite number",
                         0, static_cast<std::size_t>(i) + 2, 0);
      }
      d.y[i] = v;
    }
    return d;
  }

  std::vector<std::string> distinct(table.labels.begin(), table.labels.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() != 2) {
    throw Error(ErrorCode::kNonBinaryLabels, "classification needs exactly 2 label values, found " +
                                                 std::to_string(distinct.size()));
  }
  if (all_numeric(distinct)) {
    double a = 0.0, b = 0.0;
    detail::parse_double(distinct[0], a);
    detail::parse_double(distinct[1], b);
    if (b < a) std::swap(distinct[0], distinct[1]);
  }
  d.class_names = distinct;
  for (Eigen::Index i = 0; i < n; ++i) {
    d.y[i] = table.labels[static_cast<std::size_t>(i)] == distinct[0] ? -1.0 : 1.0;
  }
  return d;
}

Dataset load_counts_csv(const std::filesystem::path& path, const std::string& label_column,
                        Task task, bool transpose) {
  return to_dataset(read_count_table(path, label_column, transpose), task);
}

void save_dataset_csv(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  const bool labeled = data.has_labels();
  out << "sample_id";
  for (const auto& f : data.feature_names) out << ',' << detail::csv_escape(f);
  if (labeled) out << ',' << detail::csv_escape(data.label_column.empty() ? "y" : data.label_column);
  out << '\n';
  for (std::size_t i = 0; i < data.x.size(); ++i) {
    out << detail::csv_escape(data.sample_ids[i]);
    for (std::size_t j = 0; j < data.x[i].size(); ++j) out << ',' << detail::format_double(data.x[i][j]);
    if (labeled) {
      const double y = data.y[static_cast<Eigen::Index>(i)];
      out << ',';
      if (data.task == Task::kClassification && data.class_names.size() == 2) {
        out << detail::csv_escape(data.class_names[y < 0 ? 0 : 1]);
      } else {
        out << detail::format_double(y);
      }
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

FilterResult prevalence_abundance_filter(const CountTable& table, double prevalence_frac,
                                         double min_median_nonzero) {
  if (!(prevalence_frac >= 0.0 && prevalence_frac <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameters, "prevalence fraction must lie in [0, 1]");
  }
  const Eigen::Index n = table.counts.rows();
  const Eigen::Index p = table.counts.cols();
  FilterResult res;
  for (Eigen::Index j = 0; j < p; ++j) {
    std::vector<double> nonzero;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (table.counts(i, j) > 0.0) nonzero.push_back(table.counts(i, j));
    }
    if (nonzero.empty()) continue;
    if (static_cast<double>(nonzero.size()) < prevalence_frac * static_cast<double>(n)) continue;
    std::sort(nonzero.begin(), nonzero.end());
    const std::size_t m = nonzero.size();
    const double median = m % 2 == 1 ? nonzero[m / 2] : 0.5 * (nonzero[m / 2 - 1] + nonzero[m / 2]);
    if (median < min_median_nonzero) continue;
    res.kept.push_back(static_cast<std::size_t>(j));
  }
  if (res.kept.empty()) {
    throw Error(ErrorCode::kAllFeaturesFiltered, "no feature passes the prevalence/abundance filter");
  }
  res.table.sample_ids = table.sample_ids;
  res.table.label_column = table.label_column;
  res.table.labels = table.labels;
  res.table.counts.resize(n, static_cast<Eigen::Index>(res.kept.size()));
  for (std::size_t k = 0; k < res.kept.size(); ++k) {
    res.table.feature_names.push_back(table.feature_names[res.kept[k]]);
    res.table.counts.col(static_cast<Eigen::Index>(k)) = table.counts.col(static_cast<Eigen::Index>(res.kept[k]));
  }
  return res;
}

}  // namespace compkern
