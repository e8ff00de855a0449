#include "compkern/kernel_spec.hpp"

#include <cmath>
#include <cstdio>

#include "compkern/error.hpp"
#include "text_util.hpp"

namespace compkern {
namespace {

struct FamilyName {
  KernelFamily family;
  std::string_view name;
};

constexpr FamilyName kFamilyNames[] = {
    {KernelFamily::kLinear, "linear"},
    {KernelFamily::kRbf, "rbf"},
    {KernelFamily::kGeneralizedJS, "generalized-js"},
    {KernelFamily::kHilbertian, "hilbertian"},
    {KernelFamily::kAitchison, "aitchison"},
    {KernelFamily::kAitchisonRbf, "aitchison-rbf"},
    {KernelFamily::kHeatDiffusion, "heat-diffusion"},
};

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void require(bool ok, const KernelSpec& spec, const char* what) {
  if (!ok) {
    throw Error(ErrorCode::kInvalidParameters, spec.label() + ": " + what);
  }
}

std::string short_num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string_view family_name(KernelFamily family) {
  for (const auto& f : kFamilyNames) {
    if (f.family == family) return f.name;
  }
  return "unknown";
}

KernelFamily parse_family(std::string_view name) {
  for (const auto& f : kFamilyNames) {
    if (f.name == name) return f.family;
  }
  throw Error(ErrorCode::kInvalidParameters, "unknown kernel family '" + std::string(name) + "'");
}

KernelSpec KernelSpec::linear() { return KernelSpec{}; }

KernelSpec KernelSpec::rbf(double sigma2) {
  KernelSpec s;
  s.family = KernelFamily::kRbf;
  s.sigma2 = sigma2;
  s.validate();
  return s;
}

KernelSpec KernelSpec::generalized_js(double a, double b) {
  KernelSpec s;
  s.family = KernelFamily::kGeneralizedJS;
  s.a = a;
  s.b = b;
  s.validate();
  return s;
}

KernelSpec KernelSpec::hilbertian(double a, double b) {
  KernelSpec s;
  s.family = KernelFamily::kHilbertian;
  s.a = a;
  s.b = b;
  s.validate();
  return s;
}

KernelSpec KernelSpec::aitchison(double c) {
  KernelSpec s;
  s.family = KernelFamily::kAitchison;
  s.c = c;
  s.validate();
  return s;
}

KernelSpec KernelSpec::aitchison_rbf(double c, double sigma2) {
  KernelSpec s;
  s.family = KernelFamily::kAitchisonRbf;
  s.c = c;
  s.sigma2 = sigma2;
  s.validate();
  return s;
}

KernelSpec KernelSpec::heat_diffusion(double t) {
  KernelSpec s;
  s.family = KernelFamily::kHeatDiffusion;
  s.t = t;
  s.validate();
  return s;
}

KernelSpec KernelSpec::with_weight(WeightMatrix w, std::string path) const {
  KernelSpec s = *this;
  s.weight = std::make_shared<const WeightMatrix>(std::move(w));
  s.weights_path = std::move(path);
  return s;
}

KernelSpec KernelSpec::without_weight() const {
  KernelSpec s = *this;
  s.weight.reset();
  s.weights_path.clear();
  return s;
}

void KernelSpec::validate() const {
  switch (family) {
    case KernelFamily::kLinear:
      break;
    case KernelFamily::kRbf:
      require(positive_finite(sigma2), *this, "sigma2 must be finite and > 0");
      break;
    case KernelFamily::kGeneralizedJS:
      require(a > 0.0 && !std::isnan(a), *this, "a must lie in (0, inf]");
      require(b >= 0.5 && b <= a, *this, "b must lie in [0.5, a]");
      break;
    case KernelFamily::kHilbertian:
      require(a > 0.0 && !std::isnan(a), *this, "a must lie in (0, inf]");
      require(b < 0.0 && !std::isnan(b), *this, "b must lie in [-inf, 0)");
      require(!(std::isinf(a) && std::isinf(b)), *this, "a and b cannot both be infinite");
      break;
    case KernelFamily::kAitchison:
      require(positive_finite(c), *this, "c must be finite and > 0");
      break;
    case KernelFamily::kAitchisonRbf:
      require(positive_finite(c), *this, "c must be finite and > 0");
      require(positive_finite(sigma2), *this, "sigma2 must be finite and > 0");
      break;
    case KernelFamily::kHeatDiffusion:
      require(positive_finite(t), *this, "t must be finite and > 0");
      break;
  }
}

std::string KernelSpec::label() const {
  std::string out(family_name(family));
  switch (family) {
    case KernelFamily::kLinear:
      break;
    case KernelFamily::kRbf:
      out += "(sigma2=" + short_num(sigma2) + ")";
      break;
    case KernelFamily::kGeneralizedJS:
    case KernelFamily::kHilbertian:
      out += "(a=" + short_num(a) + ",b=" + short_num(b) + ")";
      break;
    case KernelFamily::kAitchison:
      out += "(c=" + short_num(c) + ")";
      break;
    case KernelFamily::kAitchisonRbf:
      out += "(c=" + short_num(c) + ",sigma2=" + short_num(sigma2) + ")";
      break;
    case KernelFamily::kHeatDiffusion:
      out += "(t=" + short_num(t) + ")";
      break;
  }
  if (weight) out += "[weighted]";
  return out;
}

bool operator==(const KernelSpec& lhs, const KernelSpec& rhs) {
  if (lhs.family != rhs.family || lhs.a != rhs.a || lhs.b != rhs.b ||
      lhs.sigma2 != rhs.sigma2 || lhs.c != rhs.c || lhs.t != rhs.t) {
    return false;
  }
  if (!lhs.weight || !rhs.weight) return !lhs.weight && !rhs.weight;
  return lhs.weight->matrix() == rhs.weight->matrix();
}

std::string format_param(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return detail::format_double(v);
}

double parse_param(std::string_view text, std::string_view key) {
  const auto s = detail::trim(text);
  if (s == "inf" || s == "+inf" || s == "Infinity") return kInf;
  if (s == "-inf" || s == "-Infinity") return -kInf;
  double v = 0.0;
  if (!detail::parse_double(s, v) || std::isnan(v)) {
    throw Error(ErrorCode::kInvalidParameters,
                "kernel field '" + std::string(key) + "' has invalid value '" + std::string(s) + "'");
  }
  return v;
}

std::map<std::string, std::string> to_record(const KernelSpec& spec) {
  std::map<std::string, std::string> rec;
  rec["family"] = std::string(family_name(spec.family));
  switch (spec.family) {
    case KernelFamily::kLinear:
      break;
    case KernelFamily::kRbf:
      rec["sigma2"] = format_param(spec.sigma2);
      break;
    case KernelFamily::kGeneralizedJS:
    case KernelFamily::kHilbertian:
      rec["a"] = format_param(spec.a);
      rec["b"] = format_param(spec.b);
      break;
    case KernelFamily::kAitchison:
      rec["c"] = format_param(spec.c);
      break;
    case KernelFamily::kAitchisonRbf:
      rec["c"] = format_param(spec.c);
      rec["sigma2"] = format_param(spec.sigma2);
      break;
    case KernelFamily::kHeatDiffusion:
      rec["t"] = format_param(spec.t);
      break;
  }
  if (!spec.weights_path.empty()) rec["weights_path"] = spec.weights_path;
  return rec;
}

KernelSpec from_record(const std::map<std::string, std::string>& record,
                       const std::filesystem::path& base_dir) {
  const auto fam = record.find("family");
  if (fam == record.end()) {
    throw Error(ErrorCode::kInvalidParameters, "kernel record lacks a 'family' field");
  }
  auto get = [&](const char* key) {
    const auto it = record.find(key);
    if (it == record.end()) {
      throw Error(ErrorCode::kInvalidParameters,
                  "kernel family '" + fam->second + "' needs field '" + key + "'");
    }
    return parse_param(it->second, key);
  };
  KernelSpec spec;
  spec.family = parse_family(fam->second);
  switch (spec.family) {
    case KernelFamily::kLinear:
      break;
    case KernelFamily::kRbf:
      spec.sigma2 = get("sigma2");
      break;
    case KernelFamily::kGeneralizedJS:
    case KernelFamily::kHilbertian:
      spec.a = get("a");
      spec.b = get("b");
      break;
    case KernelFamily::kAitchison:
      spec.c = get("c");
      break;
    case KernelFamily::kAitchisonRbf:
      spec.c = get("c");
      spec.sigma2 = get("sigma2");
      break;
    case KernelFamily::kHeatDiffusion:
      spec.t = get("t");
      break;
  }
  spec.validate();
  const auto wp = record.find("weights_path");
  if (wp != record.end() && !wp->second.empty()) {
    std::filesystem::path path(wp->second);
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    spec = spec.with_weight(WeightMatrix::read_csv(path), wp->second);
  }
  return spec;
}

}  // namespace compkern
