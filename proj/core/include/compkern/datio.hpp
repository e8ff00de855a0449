#pragma once

// CSV ingestion of count or abundance tables and the prevalence/abundance
// feature filter.
//
// Layout: a header row, then one row per sample. The first column holds the
// sample id; every other column is a feature except the optional label
// column. Cells use '.' as decimal separator. Missing cells are errors.

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "compkern/composition.hpp"
#include "compkern/learn.hpp"

namespace compkern {

// Raw table before normalization.
struct CountTable {
  std::vector<std::string> sample_ids;
  std::vector<std::string> feature_names;
  Eigen::MatrixXd counts;           // n x p, nonnegative
  std::string label_column;         // empty when the table has no labels
  std::vector<std::string> labels;  // raw label cells, one per sample
};

struct Dataset {
  CompositionList x;
  Eigen::VectorXd y;  // empty when unlabeled; +-1 for classification
  std::vector<std::string> feature_names;
  std::vector<std::string> sample_ids;
  Task task = Task::kRegression;
  // Classification only: the original label of -1 and of +1.
  std::vector<std::string> class_names;
  std::string label_column;

  bool has_labels() const { return y.size() > 0; }
};

// Reads the table. With transpose the file is taxa-as-rows (first column
// feature names, header holding sample ids); it is transposed before parsing,
// so a label row is addressed by its name exactly like a label column.
// An empty label_column reads an unlabeled table. Throws ParseError with
// line/column, MissingColumn naming the absent label column, or
// InvalidComposition for negative or non-finite cells.
CountTable read_count_table(const std::filesystem::path& path, const std::string& label_column,
                            bool transpose = false);

// Normalizes rows onto the simplex (rows already summing to 1 within 1e-9 are
// kept verbatim) and encodes labels. Classification sorts the two distinct
// labels (numerically when both parse as numbers) and maps them to -1 / +1.
// Throws ZeroSumRow naming the sample, NonBinaryLabels.
Dataset to_dataset(const CountTable& table, Task task);

Dataset load_counts_csv(const std::filesystem::path& path, const std::string& label_column,
                        Task task, bool transpose = false);

// Writes the normalized compositions (17 significant digits) in the input
// schema: sample_id, features..., and the label column when labeled.
void save_dataset_csv(const std::filesystem::path& path, const Dataset& data);

struct FilterResult {
  CountTable table;               // filtered copy
  std::vector<std::size_t> kept;  // original indices of the kept features
};

// Keeps features with count > 0 in at least prevalence_frac of the samples
// and whose median over nonzero counts is at least min_median_nonzero (even
// counts average the two middle values). Throws AllFeaturesFiltered.
FilterResult prevalence_abundance_filter(const CountTable& table, double prevalence_frac = 0.25,
                                         double min_median_nonzero = 5.0);

}  // namespace compkern
