#include "compkern/weighting.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "compkern/error.hpp"
#include "compkern/kernels.hpp"

namespace compkern {

Partition Partition::from_blocks(std::vector<std::vector<std::size_t>> blocks, std::size_t p) {
  std::vector<int> owner(p, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) {
      throw Error(ErrorCode::kInvalidPartition, "block " + std::to_string(b) + " is empty");
    }
    for (std::size_t idx : blocks[b]) {
      if (idx >= p) {
        throw Error(ErrorCode::kInvalidPartition,
                    "index " + std::to_string(idx) + " out of range for p = " + std::to_string(p));
      }
      if (owner[idx] >= 0) {
        throw Error(ErrorCode::kInvalidPartition,
                    "index " + std::to_string(idx) + " appears in more than one block");
      }
      owner[idx] = static_cast<int>(b);
    }
  }
  for (std::size_t j = 0; j < p; ++j) {
    if (owner[j] < 0) {
      throw Error(ErrorCode::kInvalidPartition, "index " + std::to_string(j) + " is in no block");
    }
  }
  return Partition(std::move(blocks), p);
}

Partition Partition::from_labels(const std::vector<std::string>& labels) {
  std::map<std::string, std::size_t> block_of;
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t j = 0; j < labels.size(); ++j) {
    auto [it, inserted] = block_of.emplace(labels[j], blocks.size());
    if (inserted) blocks.emplace_back();
    blocks[it->second].push_back(j);
  }
  return from_blocks(std::move(blocks), labels.size());
}

WeightMatrix partition_weights(const Partition& part) {
  const auto p = static_cast<Eigen::Index>(part.size());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(p, p);
  for (const auto& block : part.blocks()) {
    const double v = 1.0 / static_cast<double>(block.size());
    for (std::size_t i : block) {
      for (std::size_t j : block) {
        w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      }
    }
  }
  return WeightMatrix::from_matrix(std::move(w));
}

Eigen::MatrixXd unifrac_similarity(const PhyloTree& tree, UnifracVariant variant,
                                   const std::vector<std::string>& leaf_order) {
  const std::vector<std::string>& order = leaf_order.empty() ? tree.leaf_names() : leaf_order;
  if (order.size() != tree.leaf_names().size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "tree has " + std::to_string(tree.leaf_names().size()) + " leaves but " +
                    std::to_string(order.size()) + " coordinates were given");
  }
  for (const auto& name : order) tree.leaf(name);
  const auto p = static_cast<Eigen::Index>(order.size());
  Eigen::MatrixXd u(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    u(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < p; ++j) {
      const double d = unifrac_distance(tree, order[static_cast<std::size_t>(i)],
                                        order[static_cast<std::size_t>(j)]);
      u(i, j) = d;
      u(j, i) = d;
    }
  }
  if (variant == UnifracVariant::kA) {
    return Eigen::MatrixXd::Ones(p, p) - u;
  }
  Eigen::MatrixXd m(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = i; j < p; ++j) {
      double acc = 0.0;
      for (Eigen::Index l = 0; l < p; ++l) acc += u(i, l) * u(j, l);
      m(i, j) = acc;
      m(j, i) = acc;
    }
  }
  return m;
}

WeightMatrix unifrac_weights(const PhyloTree& tree, UnifracVariant variant,
                             const std::vector<std::string>& leaf_order) {
  Eigen::MatrixXd m = unifrac_similarity(tree, variant, leaf_order);
  const Eigen::Index p = m.rows();
  Eigen::VectorXd d(p);
  for (Eigen::Index i = 0; i < p; ++i) {
    if (!(m(i, i) > 0.0)) {
      throw Error(ErrorCode::kInvalidWeight,
                  "similarity diagonal is zero for coordinate " + std::to_string(i) +
                      "; the tree carries no branch-length information for it");
    }
    d[i] = 1.0 / std::sqrt(m(i, i));
  }
  Eigen::MatrixXd w(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    w(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < p; ++j) {
      const double v = m(i, j) * (d[i] * d[j]);
      w(i, j) = v;
      w(j, i) = v;
    }
  }
  return WeightMatrix::from_matrix(std::move(w));
}

double weighted_kernel_eval(const KernelSpec& spec, const Composition& x, const Composition& y) {
  if (!spec.weighted()) {
    throw Error(ErrorCode::kInvalidWeight, "kernel " + spec.label() + " carries no weight matrix");
  }
  return kernel_eval(spec, x, y);
}

}  // namespace compkern
