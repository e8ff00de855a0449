#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace compkern {

// Rooted tree with branch lengths. Leaves are identified by unique names.
class PhyloTree {
 public:
  struct Node {
    std::string name;
    double length = 0.0;  // branch to the parent; 0 for the root
    int parent = -1;
    std::vector<int> children;
  };

  explicit PhyloTree(std::vector<Node> nodes);

  const std::vector<Node>& nodes() const { return nodes_; }
  int root() const { return 0; }

  // Leaf names in the order they appear in the source text.
  const std::vector<std::string>& leaf_names() const { return leaf_names_; }
  std::optional<int> find_leaf(std::string_view name) const;
  // Throws UnknownLeaf.
  int leaf(std::string_view name) const;

  // Summed branch length from the root to node.
  double root_distance(int node) const { return root_distance_[static_cast<std::size_t>(node)]; }
  int lowest_common_ancestor(int a, int b) const;

 private:
  std::vector<Node> nodes_;
  std::vector<std::string> leaf_names_;
  std::vector<int> leaf_nodes_;
  std::vector<double> root_distance_;
  std::vector<int> depth_;
};

// Parses one Newick tree terminated by ';'. Names may be single-quoted ('' is
// an escaped quote); bracketed comments are skipped; a missing branch length
// defaults to 1.0 and the root's length is ignored. Errors raise ParseError
// with the byte offset, or DuplicateLeafName.
PhyloTree parse_newick(std::string_view text);
PhyloTree read_newick_file(const std::filesystem::path& path);

// Unweighted UniFrac between the point masses on leaves a and b:
// unshared / total branch length, 0 when a == b or the total is 0.
double unifrac_distance(const PhyloTree& tree, std::string_view a, std::string_view b);

}  // namespace compkern
