#pragma once

// Kernel PCA with out-of-sample projection, and kernel-distance summaries.

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "compkern/composition.hpp"
#include "compkern/interpret.hpp"
#include "compkern/kernel_spec.hpp"

namespace compkern {

struct KpcaModel {
  CompositionList train_x;
  KernelSpec spec;
  bool centered = true;
  std::size_t requested = 0;
  bool rank_deficient = false;  // fewer than `requested` eigenvalues above tolerance
  Eigen::VectorXd eigvals;      // descending, length = components()
  Eigen::MatrixXd eigvecs;      // n x components()
  // Training Gram statistics for centering new rows.
  Eigen::VectorXd train_col_means;
  double train_grand_mean = 0.0;
  Eigen::MatrixXd train_embedding;  // n x components()

  std::size_t components() const { return static_cast<std::size_t>(eigvals.size()); }
};

// Eigendecomposition of the (optionally double-centered) Gram matrix.
// Eigenvalues at or below 1e-10 * lambda_max are dropped, shrinking the
// number of components; each eigenvector's largest-magnitude entry is made
// positive. Requires 1 <= ell <= n.
KpcaModel kpca_fit(const CompositionList& xs, const KernelSpec& spec, std::size_t ell,
                   bool center = true);

// Z = K_new V Sigma^(-1/2), with K_new centered by the training statistics
// when the model is centered. Projecting the training set reproduces
// train_embedding exactly.
Eigen::MatrixXd kpca_project(const KpcaModel& model, const CompositionList& x_new);

// Component r (0-based) as a function on the simplex, for pc_contribution.
Predictor kpca_component(const KpcaModel& model, std::size_t r);

struct SummaryStat {
  Composition reference;
  KernelSpec spec;
  Eigen::VectorXd values;  // -d_k^2(x_i, reference)
};

// D(x) = -d_k^2(x, u); u defaults to the barycentre.
SummaryStat summary_stat(const CompositionList& xs, const KernelSpec& spec,
                         const std::optional<Composition>& reference = std::nullopt);

// Index into xs of the subset member with the smallest summed kernel distance
// to the other subset members; ties go to the lowest index. An empty mask
// selects every sample. Throws EmptySubset.
std::size_t kernel_medoid(const CompositionList& xs, const KernelSpec& spec,
                          const std::vector<bool>& mask = {});

}  // namespace compkern
