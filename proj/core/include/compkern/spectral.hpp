#pragma once

#include <Eigen/Core>

namespace compkern {

// Largest size handled by a dense symmetric eigensolve when only the
// spectral extremes are needed; larger matrices use a Lanczos estimate.
inline constexpr Eigen::Index kDenseEigenLimit = 4096;

struct SpectralRange {
  double min_eig = 0.0;
  double max_eig = 0.0;
  bool exact = true;
};

// Extreme eigenvalues of a symmetric matrix.
SpectralRange spectral_range(const Eigen::MatrixXd& a);

// Lanczos iteration with full reorthogonalization; returns the extreme Ritz
// values after at most `steps` iterations. Deterministic start vector.
SpectralRange lanczos_range(const Eigen::MatrixXd& a, int steps = 80);

// Tolerance rule shared by PSD checks: min_eig >= -1e-8 * max(1, max_eig).
bool is_psd(const SpectralRange& r, double rel_tol = 1e-8);

}  // namespace compkern
