#include "compkern/composition.hpp"

#include <cmath>
#include <sstream>

#include "compkern/error.hpp"

namespace compkern {
namespace {

void check_entries(std::span<const double> v) {
  if (v.size() < 2) {
    throw Error(ErrorCode::kInvalidComposition,
                "a composition needs at least 2 parts, got " +
                    std::to_string(v.size()));
  }
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (!std::isfinite(v[j]) || v[j] < 0.0) {
      std::ostringstream msg;
      msg << "entry " << j << " is " << v[j] << "; parts must be finite and >= 0";
      throw Error(ErrorCode::kInvalidComposition, msg.str());
    }
  }
}

void check_index(const Composition& x, std::size_t j) {
  if (j >= x.size()) {
    throw Error(ErrorCode::kOutOfRange, "coordinate " + std::to_string(j) +
                                            " out of range for p = " +
                                            std::to_string(x.size()));
  }
}

}  // namespace

Composition Composition::from_values(std::span<const double> values) {
  check_entries(values);
  double sum = 0.0;
  for (double v : values) sum += v;
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "parts sum to " << sum << ", not 1";
    throw Error(ErrorCode::kInvalidComposition, msg.str());
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(values.size()));
  for (std::size_t j = 0; j < values.size(); ++j) out[static_cast<Eigen::Index>(j)] = values[j];
  return Composition(std::move(out));
}

Composition Composition::from_values(const Eigen::VectorXd& values) {
  return from_values(std::span<const double>(values.data(), static_cast<std::size_t>(values.size())));
}

Composition Composition::from_counts(std::span<const double> counts) {
  check_entries(counts);
  double sum = 0.0;
  for (double v : counts) sum += v;
  if (!(sum > 0.0)) {
    throw Error(ErrorCode::kZeroSumRow, "counts sum to zero");
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(counts.size()));
  for (std::size_t j = 0; j < counts.size(); ++j) out[static_cast<Eigen::Index>(j)] = counts[j] / sum;
  return Composition(std::move(out));
}

Composition Composition::uniform(std::size_t p) {
  if (p < 2) throw Error(ErrorCode::kInvalidComposition, "p must be >= 2");
  return Composition(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(p), 1.0 / static_cast<double>(p)));
}

Composition Composition::vertex(std::size_t p, std::size_t j) {
  if (p < 2) throw Error(ErrorCode::kInvalidComposition, "p must be >= 2");
  if (j >= p) throw Error(ErrorCode::kOutOfRange, "vertex index out of range");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
  v[static_cast<Eigen::Index>(j)] = 1.0;
  return Composition(std::move(v));
}

Composition psi(const Composition& x, std::size_t j, double c) {
  check_index(x, j);
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::kInvalidScale, "psi scale must be finite and >= 0");
  }
  const double xj = x[j];
  if (xj == 1.0) {
    throw Error(ErrorCode::kDegenerateCoordinate,
                "psi undefined at a vertex (x^" + std::to_string(j) + " = 1)");
  }
  // Sum over the other coordinates directly rather than 1 - x^j.
  double rest = 0.0;
  for (std::size_t l = 0; l < x.size(); ++l) {
    if (l != j) rest += x[l];
  }
  const double s = 1.0 / (rest + c * xj);
  Eigen::VectorXd out = x.vector() * s;
  out[static_cast<Eigen::Index>(j)] = c * xj * s;
  return Composition::from_values(out);
}

Composition phi(const Composition& x, std::size_t j, double c) {
  check_index(x, j);
  if (!(c >= 0.0 && c <= 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "phi target must lie in [0, 1]");
  }
  double rest = 0.0;
  for (std::size_t l = 0; l < x.size(); ++l) {
    if (l != j) rest += x[l];
  }
  if (!(rest > 0.0)) {
    throw Error(ErrorCode::kDegenerateCoordinate,
                "phi undefined when all mass sits on coordinate " + std::to_string(j));
  }
  const double s = (1.0 - c) / rest;
  Eigen::VectorXd out = x.vector() * s;
  out[static_cast<Eigen::Index>(j)] = c;
  return Composition::from_values(out);
}

Eigen::VectorXd clr_shifted(const Composition& x, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::kNonpositiveShift, "zero shift c must be > 0");
  }
  const Eigen::Index p = x.vector().size();
  Eigen::VectorXd logs(p);
  for (Eigen::Index j = 0; j < p; ++j) logs[j] = std::log(x.vector()[j] + c);
  return logs.array() - logs.mean();
}

double geometric_mean(std::span<const double> v) {
  if (v.empty()) throw Error(ErrorCode::kNonpositiveEntry, "empty vector");
  double acc = 0.0;
  for (double e : v) {
    if (!(e > 0.0)) throw Error(ErrorCode::kNonpositiveEntry, "geometric mean needs positive entries");
    acc += std::log(e);
  }
  return std::exp(acc / static_cast<double>(v.size()));
}

double geometric_mean(const Eigen::VectorXd& v) {
  return geometric_mean(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

std::size_t common_dimension(const CompositionList& xs) {
  if (xs.empty()) return 0;
  const std::size_t p = xs.front().size();
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i].size() != p) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "row " + std::to_string(i) + " has " + std::to_string(xs[i].size()) +
                      " parts, expected " + std::to_string(p));
    }
  }
  return p;
}

}  // namespace compkern
