#include "compkern/newick.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "compkern/error.hpp"
#include "text_util.hpp"

namespace compkern {
namespace {

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  std::vector<PhyloTree::Node> parse() {
    skip_space();
    parse_subtree(-1);
    skip_space();
    expect(';');
    skip_space();
    if (pos_ != text_.size()) fail("unexpected content after ';'");
    nodes_.front().length = 0.0;
    return std::move(nodes_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("newick: " + what + " at byte " + std::to_string(pos_), pos_);
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else if (ch == '[') {
        const auto close = text_.find(']', pos_);
        if (close == std::string_view::npos) fail("unterminated comment");
        pos_ = close + 1;
      } else {
        break;
      }
    }
  }

  bool peek(char ch) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == ch;
  }

  void expect(char ch) {
    if (!peek(ch)) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  std::string parse_name() {
    skip_space();
    std::string name;
    if (pos_ < text_.size() && text_[pos_] == '\'') {
      ++pos_;
      while (true) {
        if (pos_ >= text_.size()) fail("unterminated quoted name");
        const char ch = text_[pos_++];
        if (ch == '\'') {
          if (pos_ < text_.size() && text_[pos_] == '\'') {
            name.push_back('\'');
            ++pos_;
          } else {
            break;
          }
        } else {
          name.push_back(ch);
        }
      }
      return name;
    }
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(ch)) || ch == '(' || ch == ')' || ch == ',' ||
          ch == ':' || ch == ';' || ch == '[' || ch == ']' || ch == '\'') {
        break;
      }
      name.push_back(ch);
      ++pos_;
    }
    return name;
  }

  double parse_length() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.' || ch == 'e' || ch == 'E' ||
          ch == '+' || ch == '-') {
        ++pos_;
      } else {
        break;
      }
    }
    double v = 0.0;
    if (!detail::parse_double(text_.substr(start, pos_ - start), v)) {
      pos_ = start;
      fail("expected a branch length");
    }
    if (!(v >= 0.0) || !std::isfinite(v)) {
      pos_ = start;
      fail("branch lengths must be finite and >= 0");
    }
    return v;
  }

  int parse_subtree(int parent) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({});
    nodes_[static_cast<std::size_t>(id)].parent = parent;
    bool internal = false;
    if (peek('(')) {
      internal = true;
      ++pos_;
      while (true) {
        const int child = parse_subtree(id);
        nodes_[static_cast<std::size_t>(id)].children.push_back(child);
        if (peek(',')) {
          ++pos_;
          continue;
        }
        expect(')');
        break;
      }
    }
    const std::size_t name_pos = pos_;
    std::string name = parse_name();
    if (!internal && name.empty()) {
      pos_ = name_pos;
      fail("expected a leaf name");
    }
    double length = 1.0;
    if (peek(':')) {
      ++pos_;
      length = parse_length();
    }
    auto& node = nodes_[static_cast<std::size_t>(id)];
    node.name = std::move(name);
    node.length = length;
    return id;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<PhyloTree::Node> nodes_;
};

}  // namespace

PhyloTree::PhyloTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  const std::size_t n = nodes_.size();
  root_distance_.assign(n, 0.0);
  depth_.assign(n, 0);
  std::unordered_set<std::string> seen;
  // Parents precede children in the node vector (preorder construction).
  for (std::size_t i = 0; i < n; ++i) {
    const auto& node = nodes_[i];
    if (node.parent >= 0) {
      const auto par = static_cast<std::size_t>(node.parent);
      root_distance_[i] = root_distance_[par] + node.length;
      depth_[i] = depth_[par] + 1;
    }
    if (node.children.empty()) {
      if (!seen.insert(node.name).second) {
        throw Error(ErrorCode::kDuplicateLeafName, "leaf name '" + node.name + "' occurs twice");
      }
      leaf_names_.push_back(node.name);
      leaf_nodes_.push_back(static_cast<int>(i));
    }
  }
}

std::optional<int> PhyloTree::find_leaf(std::string_view name) const {
  for (std::size_t k = 0; k < leaf_names_.size(); ++k) {
    if (leaf_names_[k] == name) return leaf_nodes_[k];
  }
  return std::nullopt;
}

int PhyloTree::leaf(std::string_view name) const {
  const auto id = find_leaf(name);
  if (!id) throw Error(ErrorCode::kUnknownLeaf, "tree has no leaf named '" + std::string(name) + "'");
  return *id;
}

int PhyloTree::lowest_common_ancestor(int a, int b) const {
  while (depth_[static_cast<std::size_t>(a)] > depth_[static_cast<std::size_t>(b)]) {
    a = nodes_[static_cast<std::size_t>(a)].parent;
  }
  while (depth_[static_cast<std::size_t>(b)] > depth_[static_cast<std::size_t>(a)]) {
    b = nodes_[static_cast<std::size_t>(b)].parent;
  }
  while (a != b) {
    a = nodes_[static_cast<std::size_t>(a)].parent;
    b = nodes_[static_cast<std::size_t>(b)].parent;
  }
  return a;
}

PhyloTree parse_newick(std::string_view text) {
  return PhyloTree(NewickParser(text).parse());
}

PhyloTree read_newick_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open tree file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_newick(buf.str());
}

double unifrac_distance(const PhyloTree& tree, std::string_view a, std::string_view b) {
  const int na = tree.leaf(a);
  const int nb = tree.leaf(b);
  if (na == nb) return 0.0;
  const int lca = tree.lowest_common_ancestor(na, nb);
  const double shared = tree.root_distance(lca);
  const double unshared =
      (tree.root_distance(na) - shared) + (tree.root_distance(nb) - shared);
  const double total = shared + unshared;
  if (total <= 0.0) return 0.0;
  return unshared / total;
}

}  // namespace compkern
