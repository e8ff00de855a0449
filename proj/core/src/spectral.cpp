#include "compkern/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace compkern {

SpectralRange spectral_range(const Eigen::MatrixXd& a) {
  if (a.rows() == 0) return {};
  if (a.rows() > kDenseEigenLimit) return lanczos_range(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff(), true};
}

SpectralRange lanczos_range(const Eigen::MatrixXd& a, int steps) {
  const Eigen::Index n = a.rows();
  if (n == 0) return {};
  const int m = static_cast<int>(std::min<Eigen::Index>(steps, n));
  Eigen::MatrixXd q(n, m);
  Eigen::VectorXd alpha(m);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(m);

  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(static_cast<double>(i) + 1.0);
  v.normalize();

  int used = 0;
  for (int k = 0; k < m; ++k) {
    q.col(k) = v;
    Eigen::VectorXd w = a * v;
    alpha[k] = v.dot(w);
    // Full reorthogonalization against all previous Lanczos vectors.
    for (int pass = 0; pass < 2; ++pass) {
      w -= q.leftCols(k + 1) * (q.leftCols(k + 1).transpose() * w);
    }
    used = k + 1;
    const double b = w.norm();
    if (k + 1 < m) beta[k + 1] = b;
    if (b <= 1e-14 * std::max(1.0, std::abs(alpha[k]))) break;
    v = w / b;
  }

  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(used, used);
  for (int k = 0; k < used; ++k) {
    t(k, k) = alpha[k];
    if (k + 1 < used) {
      t(k, k + 1) = beta[k + 1];
      t(k + 1, k) = beta[k + 1];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff(), used == n};
}

bool is_psd(const SpectralRange& r, double rel_tol) {
  return r.min_eig >= -rel_tol * std::max(1.0, r.max_eig);
}

}  // namespace compkern
