#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "itp/errors.hpp"

namespace itp {

struct TreeNode {
  unsigned id;
  std::optional<unsigned> parent;      // none for the root
  std::optional<std::size_t> partition; // decoration φ_k; none means ⊤
};

// A rooted tree whose nodes are decorated with partitions of Φ (or ⊤).
// Nodes are kept in ascending id order, which is also the slot order of a
// tree-interpolation family.
class Tree {
public:
  // Throws UsageError unless the nodes form a single connected rooted tree.
  explicit Tree(std::vector<TreeNode> nodes);

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  unsigned root() const { return root_; }
  const TreeNode& node(unsigned id) const;
  // Position of `id` in nodes(), i.e. its family slot.
  std::size_t slot_of(unsigned id) const;
  const std::vector<unsigned>& children(unsigned id) const;
  // (parent, child) pairs sorted ascending.
  std::vector<std::pair<unsigned, unsigned>> edges() const;
  // Partitions decorating the subtree rooted at `id` (the F_i of the node).
  std::set<std::size_t> subtree_partitions(unsigned id) const;

private:
  std::vector<TreeNode> nodes_;
  std::map<unsigned, std::size_t> index_;
  std::map<unsigned, std::vector<unsigned>> children_;
  unsigned root_ = 0;
};

// Lines "<node> <parent>", parent 0 marking the root; node k is decorated
// with partition k. '#' and 'c' start comments. Throws SyntaxError, UsageError.
Tree parse_tree(std::string_view text);
Tree read_tree_file(const std::string& path);

// Node 0 (⊤) with children 1..n, under the root n+1. Node i ≤ n carries φ_i
// and the root carries φ_{n+1}.
Tree build_gsa_tree(unsigned n);
// Nodes 1..2n: node i carries φ_i and hangs below node n+i (⊤); node n+i
// hangs below n+i+1, so 2n is the root.
Tree build_sti_tree(unsigned n);

} // namespace itp
