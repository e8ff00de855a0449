#include "compkern/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "compkern/error.hpp"

namespace compkern {
namespace {

using nlohmann::json;

constexpr const char* kFormat = "compkern-model";
constexpr int kVersion = 1;

[[noreturn]] void bad(const std::string& msg) {
  throw Error(ErrorCode::kInvalidParameters, "model file: " + msg);
}

const json& field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) bad(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::vector<double> numbers(const json& v, const std::string& what) {
  if (!v.is_array()) bad(what + " must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number()) bad(what + " must contain numbers only");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

std::string model_to_json(const FittedModel& model, const std::vector<std::string>& feature_names) {
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["task"] = std::string(task_name(model.task()));
  json kernel = json::object();
  for (const auto& [key, value] : to_record(model.spec())) {
    if (key != "weights_path") kernel[key] = value;
  }
  j["kernel"] = kernel;
  if (model.spec().weighted()) {
    const Eigen::MatrixXd& w = model.spec().weight->matrix();
    json rows = json::array();
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < w.cols(); ++c) row.push_back(w(r, c));
      rows.push_back(std::move(row));
    }
    j["weights"] = std::move(rows);
  }
  j["lambda"] = model.lambda();
  j["intercept"] = model.intercept();
  j["feature_names"] = feature_names;
  j["alpha"] = std::vector<double>(model.alpha().data(), model.alpha().data() + model.alpha().size());
  json xs = json::array();
  for (const auto& x : model.train_x()) {
    xs.push_back(std::vector<double>(x.vector().data(), x.vector().data() + x.vector().size()));
  }
  j["train_x"] = std::move(xs);
  return j.dump(1) + "\n";
}

SavedModel model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what(), e.byte);
  }
  if (!j.is_object()) bad("top level must be an object");
  const json& fmt = field(j, "format");
  if (!fmt.is_string() || fmt.get<std::string>() != kFormat) bad("unknown format");
  const json& ver = field(j, "version");
  if (!ver.is_number_integer() || ver.get<int>() != kVersion) bad("unsupported version");
  const json& task_field = field(j, "task");
  if (!task_field.is_string()) bad("field 'task' must be a string");
  const Task task = parse_task(task_field.get<std::string>());

  const json& kernel = field(j, "kernel");
  if (!kernel.is_object()) bad("field 'kernel' must be an object");
  std::map<std::string, std::string> record;
  for (const auto& [key, value] : kernel.items()) {
    if (!value.is_string()) bad("kernel field '" + key + "' must be a string");
    record[key] = value.get<std::string>();
  }
  KernelSpec spec = from_record(record);
  if (const auto it = j.find("weights"); it != j.end()) {
    if (!it->is_array()) bad("field 'weights' must be an array");
    const auto p = static_cast<Eigen::Index>(it->size());
    Eigen::MatrixXd w(p, p);
    for (Eigen::Index r = 0; r < p; ++r) {
      const auto row = numbers((*it)[static_cast<std::size_t>(r)], "weights row");
      if (static_cast<Eigen::Index>(row.size()) != p) bad("weights must be square");
      for (Eigen::Index c = 0; c < p; ++c) w(r, c) = row[static_cast<std::size_t>(c)];
    }
    spec = spec.with_weight(WeightMatrix::from_matrix(std::move(w)));
  }

  const double lambda = number(j, "lambda");
  const double intercept = number(j, "intercept");
  const auto alpha = numbers(field(j, "alpha"), "alpha");
  const json& xs_field = field(j, "train_x");
  if (!xs_field.is_array()) bad("train_x must be an array");
  CompositionList xs;
  xs.reserve(xs_field.size());
  for (const auto& row : xs_field) xs.push_back(Composition::from_values(numbers(row, "train_x row")));
  if (xs.size() != alpha.size()) bad("alpha and train_x lengths differ");
  if (xs.empty()) bad("model has no training points");

  std::vector<std::string> names;
  if (const auto it = j.find("feature_names"); it != j.end()) {
    if (!it->is_array()) bad("feature_names must be an array");
    for (const auto& e : *it) {
      if (!e.is_string()) bad("feature_names must contain strings");
      names.push_back(e.get<std::string>());
    }
  }
  if (!names.empty() && names.size() != xs.front().size()) bad("feature_names length differs from p");

  Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(alpha.data(), static_cast<Eigen::Index>(alpha.size()));
  return SavedModel{FittedModel(std::move(xs), std::move(a), intercept, std::move(spec), lambda, task),
                    std::move(names)};
}

void save_model(const std::filesystem::path& path, const FittedModel& model,
                const std::vector<std::string>& feature_names) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << model_to_json(model, feature_names);
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

SavedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace compkern
