#pragma once

// Compositional feature influence (CFI), compositional feature dependence
// (CPD) and principal-component contributions for arbitrary predictors.
//
// CFI of coordinate j is the average derivative of f along the multiplicative
// perturbation psi_j(x, c) at c = 1. CPD of coordinate j at z is the average
// change in f when coordinate j is pinned to z with phi_j and the remaining
// parts rescaled. The CPD reflects the joint distribution of the data: pinning
// one part moves all the others, so a curve is only meaningful over the range
// of compositions the sample actually supports, and should be read with care
// when the data cover the simplex sparsely.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "compkern/composition.hpp"
#include "compkern/learn.hpp"

namespace compkern {

using Predictor = std::function<double(const Composition&)>;

// Decision function of a fitted model.
Predictor as_predictor(const FittedModel& model);

struct CfiResult {
  Eigen::VectorXd values;
  // Samples skipped per coordinate because x^j = 1 there.
  std::vector<std::size_t> skipped;

  std::size_t warning_count() const;
};

inline constexpr double kDefaultCfiStep = 1e-5;

// Central difference [f(psi_j(x, 1+h)) - f(psi_j(x, 1-h))] / (2h) averaged
// over the samples, h in (0, 1). Predictor exceptions and non-finite outputs
// become PredictorFailure naming the sample.
CfiResult cfi(const Predictor& f, const CompositionList& xs, double h = kDefaultCfiStep);

struct CpdCurve {
  std::size_t coordinate = 0;
  std::vector<double> grid;
  std::vector<double> values;
  // Samples left out because all their mass sits on the coordinate.
  std::size_t dropped = 0;
};

// 100 evenly spaced points in [0.001, 0.999].
std::vector<double> default_cpd_grid();

// S(z) = mean_i f(phi_j(X_i, z)) - mean_i f(X_i) over the samples where phi_j
// is defined. Throws DegenerateCoordinate when no sample qualifies, OutOfRange
// for z outside (0, 1), InvalidParameters for a grid that is not strictly
// increasing.
CpdCurve cpd(const Predictor& f, const CompositionList& xs, std::size_t j,
             const std::vector<double>& grid);

// Log-contrast function f(x) = sum_j beta_j log x^j with sum beta = 0, whose
// CFI is beta and whose CPD is beta_j * logit(z) plus a constant.
class LogContrast {
 public:
  // Throws NonzeroSum when |sum beta| > 1e-9 * max(1, |beta|_1).
  explicit LogContrast(Eigen::VectorXd beta);

  const Eigen::VectorXd& beta() const { return beta_; }

  // Throws NonpositiveCoordinate where x^j <= 0 and beta_j != 0.
  double operator()(const Composition& x) const;
  Predictor predictor() const;

  // Exact CFI (the coefficients themselves).
  const Eigen::VectorXd& cfi() const { return beta_; }

  // Exact sample CPD: beta_j * (logit(z) - mean_i logit(X_i^j)).
  std::vector<double> cpd(std::size_t j, const std::vector<double>& grid,
                          const CompositionList& xs) const;

 private:
  Eigen::VectorXd beta_;
};

// Mean change (1/n) sum_i F(psi_j(X_i, c)) - F(X_i) for every coordinate j,
// for c > 0. Samples with x^j = 1 are skipped for that coordinate.
Eigen::VectorXd pc_contribution(const Predictor& component, const CompositionList& xs, double c);

// Two-column CSV: feature,value. With sum_footer a last row "sum,<total>"
// records the sum of the values, which is 0 up to round-off for smooth f.
void write_cfi_csv(const std::filesystem::path& path, const std::vector<std::string>& features,
                   const Eigen::VectorXd& values, bool sum_footer = false);
// Long CSV: feature,z,value.
void write_cpd_csv(const std::filesystem::path& path, const std::vector<std::string>& features,
                   const std::vector<CpdCurve>& curves);

}  // namespace compkern
