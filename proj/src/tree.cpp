#include "itp/tree.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace itp {

Tree::Tree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw UsageError("tree has no nodes");
  std::sort(nodes_.begin(), nodes_.end(), [](const TreeNode& x, const TreeNode& y) { return x.id < y.id; });
  std::optional<unsigned> root;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!index_.emplace(nodes_[i].id, i).second)
      throw UsageError("tree node " + std::to_string(nodes_[i].id) + " declared twice");
    if (!nodes_[i].parent) {
      if (root) throw UsageError("tree has two roots: " + std::to_string(*root) + " and " + std::to_string(nodes_[i].id));
      root = nodes_[i].id;
    }
  }
  if (!root) throw UsageError("tree has no root");
  root_ = *root;
  for (const TreeNode& n : nodes_) {
    children_[n.id];
    if (!n.parent) continue;
    if (!index_.count(*n.parent))
      throw UsageError("tree node " + std::to_string(n.id) + " has unknown parent " + std::to_string(*n.parent));
    children_[*n.parent].push_back(n.id);
  }
  // Connected and acyclic iff every node is reached from the root.
  std::size_t reached = 0;
  std::vector<unsigned> stack{root_};
  while (!stack.empty()) {
    unsigned id = stack.back();
    stack.pop_back();
    ++reached;
    for (unsigned c : children_.at(id)) stack.push_back(c);
  }
  if (reached != nodes_.size()) throw UsageError("tree is not connected (or has a cycle)");
  std::set<std::size_t> seen;
  for (const TreeNode& n : nodes_)
    if (n.partition && !seen.insert(*n.partition).second)
      throw UsageError("partition " + std::to_string(*n.partition) + " decorates two tree nodes");
}

const TreeNode& Tree::node(unsigned id) const { return nodes_.at(slot_of(id)); }

std::size_t Tree::slot_of(unsigned id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw UsageError("no tree node " + std::to_string(id));
  return it->second;
}

const std::vector<unsigned>& Tree::children(unsigned id) const { return children_.at(id); }

std::vector<std::pair<unsigned, unsigned>> Tree::edges() const {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (const TreeNode& n : nodes_)
    if (n.parent) out.emplace_back(*n.parent, n.id);
  std::sort(out.begin(), out.end());
  return out;
}

std::set<std::size_t> Tree::subtree_partitions(unsigned id) const {
  std::set<std::size_t> out;
  std::vector<unsigned> stack{id};
  while (!stack.empty()) {
    unsigned u = stack.back();
    stack.pop_back();
    if (auto p = node(u).partition) out.insert(*p);
    for (unsigned c : children_.at(u)) stack.push_back(c);
  }
  return out;
}

Tree parse_tree(std::string_view text) {
  std::vector<TreeNode> nodes;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#' || line[first] == 'c') continue;
    std::istringstream ls(line);
    long node = 0, parent = 0;
    std::string extra;
    if (!(ls >> node >> parent) || (ls >> extra))
      throw SyntaxError("expected '<node> <parent>'", lineno);
    if (node < 1 || parent < 0) throw SyntaxError("node ids are positive, parent 0 marks the root", lineno);
    TreeNode n{static_cast<unsigned>(node), std::nullopt, static_cast<std::size_t>(node)};
    if (parent != 0) n.parent = static_cast<unsigned>(parent);
    nodes.push_back(n);
  }
  return Tree(std::move(nodes));
}

Tree read_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_tree(ss.str());
}

Tree build_gsa_tree(unsigned n) {
  if (n < 1) throw UsageError("GSA tree needs n >= 1");
  std::vector<TreeNode> nodes;
  nodes.push_back({0, n + 1, std::nullopt});
  for (unsigned i = 1; i <= n; ++i) nodes.push_back({i, 0u, i});
  nodes.push_back({n + 1, std::nullopt, n + 1});
  return Tree(std::move(nodes));
}

Tree build_sti_tree(unsigned n) {
  if (n < 1) throw UsageError("STI tree needs n >= 1");
  std::vector<TreeNode> nodes;
  for (unsigned i = 1; i <= n; ++i) nodes.push_back({i, n + i, i});
  for (unsigned i = 1; i <= n; ++i) {
    TreeNode s{n + i, std::nullopt, std::nullopt};
    if (i < n) s.parent = n + i + 1;
    nodes.push_back(s);
  }
  return Tree(std::move(nodes));
}

} // namespace itp
