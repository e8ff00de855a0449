#include "compkern/interpret.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "compkern/error.hpp"
#include "compkern/parallel.hpp"
#include "text_util.hpp"

namespace compkern {
namespace {

double call(const Predictor& f, const Composition& x, std::size_t sample) {
  double v = 0.0;
  try {
    v = f(x);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kPredictorFailure,
                "predictor failed on sample " + std::to_string(sample) + ": " + e.what());
  }
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kPredictorFailure,
                "predictor returned a non-finite value on sample " + std::to_string(sample));
  }
  return v;
}

double logit(double z) { return std::log(z / (1.0 - z)); }

}  // namespace

Predictor as_predictor(const FittedModel& model) {
  return [model](const Composition& x) { return model.decision(x); };
}

std::size_t CfiResult::warning_count() const {
  return std::accumulate(skipped.begin(), skipped.end(), std::size_t{0});
}

CfiResult cfi(const Predictor& f, const CompositionList& xs, double h) {
  if (!(h > 0.0 && h < 1.0)) {
    throw Error(ErrorCode::kInvalidScale, "finite-difference step must lie in (0, 1)");
  }
  const std::size_t n = xs.size();
  const std::size_t p = common_dimension(xs);
  CfiResult out;
  out.values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
  out.skipped.assign(p, 0);
  if (n == 0) return out;

  // Per-sample derivatives, reduced afterwards in sample order.
  Eigen::MatrixXd deriv(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  parallel_for(n, [&](std::size_t i) {
    const Composition& x = xs[i];
    for (std::size_t j = 0; j < p; ++j) {
      double d = std::numeric_limits<double>::quiet_NaN();
      if (x[j] != 1.0) {
        const double up = call(f, psi(x, j, 1.0 + h), i);
        const double down = call(f, psi(x, j, 1.0 - h), i);
        d = (up - down) / (2.0 * h);
      }
      deriv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d;
    }
  });
  for (std::size_t j = 0; j < p; ++j) {
    double acc = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = deriv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (std::isnan(d)) {
        ++out.skipped[j];
      } else {
        acc += d;
        ++used;
      }
    }
    out.values[static_cast<Eigen::Index>(j)] = used > 0 ? acc / static_cast<double>(used) : 0.0;
  }
  return out;
}

std::vector<double> default_cpd_grid() {
  std::vector<double> grid(100);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = 0.001 + (0.999 - 0.001) * static_cast<double>(i) / 99.0;
  }
  grid.back() = 0.999;
  return grid;
}

CpdCurve cpd(const Predictor& f, const CompositionList& xs, std::size_t j,
             const std::vector<double>& grid) {
  const std::size_t p = common_dimension(xs);
  if (j >= p) {
    throw Error(ErrorCode::kOutOfRange, "coordinate " + std::to_string(j) + " out of range");
  }
  for (std::size_t g = 0; g < grid.size(); ++g) {
    if (!(grid[g] > 0.0 && grid[g] < 1.0)) {
      throw Error(ErrorCode::kOutOfRange, "CPD grid values must lie in (0, 1)");
    }
    if (g > 0 && !(grid[g] > grid[g - 1])) {
      throw Error(ErrorCode::kInvalidParameters, "CPD grid must be strictly increasing");
    }
  }
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i][j] != 1.0) usable.push_back(i);
  }
  CpdCurve curve;
  curve.coordinate = j;
  curve.grid = grid;
  curve.dropped = xs.size() - usable.size();
  if (usable.empty()) {
    throw Error(ErrorCode::kDegenerateCoordinate,
                "every sample has all its mass on coordinate " + std::to_string(j));
  }
  const std::size_t m = usable.size();
  const std::size_t ng = grid.size();
  // Row 0 holds f(X_i); rows 1.. hold f(phi_j(X_i, z_g)).
  Eigen::MatrixXd vals(static_cast<Eigen::Index>(ng + 1), static_cast<Eigen::Index>(m));
  parallel_for(m, [&](std::size_t k) {
    const std::size_t i = usable[k];
    const auto col = static_cast<Eigen::Index>(k);
    vals(0, col) = call(f, xs[i], i);
    for (std::size_t g = 0; g < ng; ++g) {
      vals(static_cast<Eigen::Index>(g + 1), col) = call(f, phi(xs[i], j, grid[g]), i);
    }
  });
  auto row_mean = [&](Eigen::Index r) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < vals.cols(); ++k) acc += vals(r, k);
    return acc / static_cast<double>(m);
  };
  const double base = row_mean(0);
  curve.values.resize(ng);
  for (std::size_t g = 0; g < ng; ++g) {
    curve.values[g] = row_mean(static_cast<Eigen::Index>(g + 1)) - base;
  }
  return curve;
}

LogContrast::LogContrast(Eigen::VectorXd beta) : beta_(std::move(beta)) {
  const double sum = beta_.sum();
  const double scale = std::max(1.0, beta_.lpNorm<1>());
  if (std::abs(sum) > 1e-9 * scale) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "log-contrast coefficients sum to " << sum << ", not 0";
    throw Error(ErrorCode::kNonzeroSum, msg.str());
  }
}

double LogContrast::operator()(const Composition& x) const {
  if (x.size() != static_cast<std::size_t>(beta_.size())) {
    throw Error(ErrorCode::kDimensionMismatch, "composition and coefficient lengths differ");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double b = beta_[static_cast<Eigen::Index>(j)];
    if (b == 0.0) continue;
    if (!(x[j] > 0.0)) {
      throw Error(ErrorCode::kNonpositiveCoordinate,
                  "log-contrast needs x^" + std::to_string(j) + " > 0");
    }
    acc += b * std::log(x[j]);
  }
  return acc;
}

Predictor LogContrast::predictor() const {
  return [lc = *this](const Composition& x) { return lc(x); };
}

std::vector<double> LogContrast::cpd(std::size_t j, const std::vector<double>& grid,
                                     const CompositionList& xs) const {
  if (j >= static_cast<std::size_t>(beta_.size())) {
    throw Error(ErrorCode::kOutOfRange, "coordinate out of range");
  }
  const double b = beta_[static_cast<Eigen::Index>(j)];
  std::vector<double> out(grid.size(), 0.0);
  if (b == 0.0) return out;
  double mean_logit = 0.0;
  for (const auto& x : xs) {
    if (!(x[j] > 0.0 && x[j] < 1.0)) {
      throw Error(ErrorCode::kNonpositiveCoordinate, "log-contrast CPD needs 0 < x^j < 1");
    }
    mean_logit += logit(x[j]);
  }
  mean_logit /= static_cast<double>(xs.size());
  for (std::size_t g = 0; g < grid.size(); ++g) out[g] = b * (logit(grid[g]) - mean_logit);
  return out;
}

Eigen::VectorXd pc_contribution(const Predictor& component, const CompositionList& xs, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::kInvalidScale, "perturbation scale must be finite and > 0");
  }
  const std::size_t n = xs.size();
  const std::size_t p = common_dimension(xs);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
  if (n == 0 || c == 1.0) return out;
  Eigen::MatrixXd delta(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  parallel_for(n, [&](std::size_t i) {
    const double base = call(component, xs[i], i);
    for (std::size_t j = 0; j < p; ++j) {
      double d = std::numeric_limits<double>::quiet_NaN();
      if (xs[i][j] != 1.0) d = call(component, psi(xs[i], j, c), i) - base;
      delta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d;
    }
  });
  for (std::size_t j = 0; j < p; ++j) {
    double acc = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = delta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (!std::isnan(d)) {
        acc += d;
        ++used;
      }
    }
    out[static_cast<Eigen::Index>(j)] = used > 0 ? acc / static_cast<double>(used) : 0.0;
  }
  return out;
}

void write_cfi_csv(const std::filesystem::path& path, const std::vector<std::string>& features,
                   const Eigen::VectorXd& values, bool sum_footer) {
  if (features.size() != static_cast<std::size_t>(values.size())) {
    throw Error(ErrorCode::kDimensionMismatch, "feature names and CFI values differ in length");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << "feature,value\n";
  for (std::size_t j = 0; j < features.size(); ++j) {
    out << detail::csv_escape(features[j]) << ','
        << detail::format_double(values[static_cast<Eigen::Index>(j)]) << '\n';
  }
  if (sum_footer) out << "sum," << detail::format_double(values.sum()) << '\n';
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

void write_cpd_csv(const std::filesystem::path& path, const std::vector<std::string>& features,
                   const std::vector<CpdCurve>& curves) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << "feature,z,value\n";
  for (const auto& curve : curves) {
    if (curve.coordinate >= features.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "CPD coordinate has no feature name");
    }
    const std::string name = detail::csv_escape(features[curve.coordinate]);
    for (std::size_t g = 0; g < curve.grid.size(); ++g) {
      out << name << ',' << detail::format_double(curve.grid[g]) << ','
          << detail::format_double(curve.values[g]) << '\n';
    }
  }
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

}  // namespace compkern
