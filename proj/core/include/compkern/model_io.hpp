#pragma once

// JSON serialization of fitted models.
//
// Layout:
//   {"format": "compkern-model", "version": 1, "task": "regression",
//    "kernel": {"family": "aitchison", "c": "1.0000000000000001e-05"},
//    "weights": [[...], ...],            // only for weighted kernels
//    "lambda": 0.01, "intercept": 1.5,
//    "feature_names": ["x1", ...],       // may be empty
//    "alpha": [...], "train_x": [[...], ...]}
// Kernel parameters keep the string form of to_record so infinities survive.
// Numbers round-trip exactly.

#include <filesystem>
#include <string>
#include <vector>

#include "compkern/learn.hpp"

namespace compkern {

struct SavedModel {
  FittedModel model;
  std::vector<std::string> feature_names;
};

std::string model_to_json(const FittedModel& model,
                          const std::vector<std::string>& feature_names = {});
// Throws ParseError for malformed JSON and InvalidParameters for a record
// that does not describe a model.
SavedModel model_from_json(const std::string& text);

void save_model(const std::filesystem::path& path, const FittedModel& model,
                const std::vector<std::string>& feature_names = {});
SavedModel load_model(const std::filesystem::path& path);

}  // namespace compkern
