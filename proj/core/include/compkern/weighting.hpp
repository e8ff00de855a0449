#pragma once

// Weight matrices encoding prior relations between coordinates: partition
// blocks and UniFrac similarities on a phylogenetic tree.

#include <cstddef>
#include <string>
#include <vector>

#include "compkern/composition.hpp"
#include "compkern/kernel_spec.hpp"
#include "compkern/newick.hpp"
#include "compkern/weight_matrix.hpp"

namespace compkern {

// Disjoint nonempty blocks covering {0, ..., p-1}.
class Partition {
 public:
  // Throws InvalidPartition on overlap, gaps, empty blocks or bad indices.
  static Partition from_blocks(std::vector<std::vector<std::size_t>> blocks, std::size_t p);
  // One block per distinct label, blocks ordered by first appearance.
  static Partition from_labels(const std::vector<std::string>& labels);

  std::size_t size() const { return p_; }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }

 private:
  Partition(std::vector<std::vector<std::size_t>> blocks, std::size_t p)
      : blocks_(std::move(blocks)), p_(p) {}

  std::vector<std::vector<std::size_t>> blocks_;
  std::size_t p_ = 0;
};

// W_ij = 1/|P| when i and j share block P, else 0.
WeightMatrix partition_weights(const Partition& part);

enum class UnifracVariant {
  kA,  // M_ij = 1 - UniFrac(e_i, e_j); may fail the PSD check
  kB,  // M_ij = sum_l UniFrac(e_i, e_l) UniFrac(e_j, e_l); PSD by construction
};

// Similarity matrix M of the chosen variant rescaled to unit diagonal,
// W = D M D with D = diag(1 / sqrt(M_ii)). Coordinates follow leaf_order, or
// the tree's leaf order when leaf_order is empty. Variant A throws NotPSD
// when the check fails; variant B is the recommended fallback.
WeightMatrix unifrac_weights(const PhyloTree& tree, UnifracVariant variant,
                             const std::vector<std::string>& leaf_order = {});

// The raw similarity matrix before diagonal scaling.
Eigen::MatrixXd unifrac_similarity(const PhyloTree& tree, UnifracVariant variant,
                                   const std::vector<std::string>& leaf_order = {});

// kernel_eval for a spec that must carry a weight matrix (InvalidWeight otherwise).
double weighted_kernel_eval(const KernelSpec& spec, const Composition& x, const Composition& y);

}  // namespace compkern
