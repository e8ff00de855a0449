#pragma once

// Compositional core: points of the simplex, the two coordinate-wise
// perturbations psi and phi, and the zero-shifted centered log-ratio map.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace compkern {

// Entries must sum to one within this tolerance to be accepted as-is.
inline constexpr double kSimplexTolerance = 1e-9;

// A nonnegative vector of p >= 2 parts summing to one.
class Composition {
 public:
  // Validates values that are already (close to) on the simplex. Values whose
  // sum is within kSimplexTolerance of 1 are stored verbatim.
  static Composition from_values(std::span<const double> values);
  static Composition from_values(const Eigen::VectorXd& values);

  // Divides nonnegative counts by their total; zero totals are rejected.
  static Composition from_counts(std::span<const double> counts);

  // The barycentre (1/p, ..., 1/p).
  static Composition uniform(std::size_t p);

  // The vertex e_j.
  static Composition vertex(std::size_t p, std::size_t j);

  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
  double operator[](std::size_t j) const { return values_[static_cast<Eigen::Index>(j)]; }
  const Eigen::VectorXd& vector() const { return values_; }
  std::span<const double> span() const {
    return {values_.data(), static_cast<std::size_t>(values_.size())};
  }

  friend bool operator==(const Composition& a, const Composition& b) {
    return a.values_.size() == b.values_.size() && a.values_ == b.values_;
  }

 private:
  explicit Composition(Eigen::VectorXd values) : values_(std::move(values)) {}

  Eigen::VectorXd values_;
};

using CompositionList = std::vector<Composition>;

// Multiplies coordinate j by c >= 0 and rescales back onto the simplex.
Composition psi(const Composition& x, std::size_t j, double c);

// Pins coordinate j to c in [0, 1] and rescales the remaining parts to 1 - c.
Composition phi(const Composition& x, std::size_t j, double c);

// (log((x^j + c) / g(x + c)))_j with g the geometric mean. Requires c > 0.
Eigen::VectorXd clr_shifted(const Composition& x, double c);

// (prod v_j)^(1/p), evaluated as exp(mean(log v)).
double geometric_mean(std::span<const double> v);
double geometric_mean(const Eigen::VectorXd& v);

// Throws DimensionMismatch unless every element has p parts; returns p.
std::size_t common_dimension(const CompositionList& xs);

}  // namespace compkern
