#include "itp/proof.hpp"

#include <algorithm>

namespace itp {

ValidationError::ValidationError(Kind kind, NodeId node, const std::string& detail)
    : Error(std::string(itp::to_string(kind)) + " at node " + std::to_string(node) +
            (detail.empty() ? "" : ": " + detail)),
      kind_(kind), node_(node) {}

const char* to_string(ValidationError::Kind kind) {
  switch (kind) {
  case ValidationError::Kind::BadLeaf: return "BadLeaf";
  case ValidationError::Kind::BadResolvent: return "BadResolvent";
  case ValidationError::Kind::RootNotEmpty: return "RootNotEmpty";
  case ValidationError::Kind::Cycle: return "Cycle";
  }
  return "?";
}

std::size_t ResolutionProof::num_leaves() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const ProofNode& n) { return n.leaf; }));
}

std::size_t ResolutionProof::max_clause_size() const {
  std::size_t s = 0;
  for (const auto& n : nodes_) s = std::max(s, n.clause.size());
  return s;
}

std::optional<Clause> resolvent(const Clause& pos, const Clause& neg, Var pivot) {
  if (!pos.contains(Lit(pivot, true)) || !neg.contains(Lit(pivot, false))) return std::nullopt;
  std::vector<Lit> lits;
  lits.reserve(pos.size() + neg.size());
  for (Lit l : pos)
    if (l.var() != pivot) lits.push_back(l);
  for (Lit l : neg)
    if (l.var() != pivot) lits.push_back(l);
  try {
    return Clause(std::move(lits));
  } catch (const TautologyError&) {
    return std::nullopt;
  }
}

NodeId ProofBuilder::add_leaf(Clause clause, std::size_t partition) {
  nodes_.push_back(ProofNode{std::move(clause), true, partition, Var(), 0, 0});
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId ProofBuilder::add_inner(Clause clause, Var pivot, NodeId pos, NodeId neg) {
  nodes_.push_back(ProofNode{std::move(clause), false, 0, pivot, pos, neg});
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId ProofBuilder::add_resolvent(Var pivot, NodeId pos, NodeId neg) {
  auto r = resolvent(node(pos).clause, node(neg).clause, pivot);
  if (!r)
    throw ValidationError(ValidationError::Kind::BadResolvent, static_cast<NodeId>(nodes_.size()),
                          "antecedents do not resolve on " + std::to_string(pivot.index()));
  return add_inner(std::move(*r), pivot, pos, neg);
}

namespace {

// The unique variable on which `a` and `b` have opposite literals.
Var clash(const Clause& a, const Clause& b) {
  std::optional<Var> found;
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->var() < ib->var()) {
      ++ia;
    } else if (ib->var() < ia->var()) {
      ++ib;
    } else {
      if (ia->positive() != ib->positive()) {
        if (found)
          throw ChainError(ChainError::Kind::AmbiguousPivot,
                           a.to_string() + " and " + b.to_string() + " clash on " +
                               std::to_string(found->index()) + " and " +
                               std::to_string(ia->var().index()));
        found = ia->var();
      }
      ++ia;
      ++ib;
    }
  }
  if (!found)
    throw ChainError(ChainError::Kind::NoPivot, a.to_string() + " and " + b.to_string() +
                                                    " have no clashing variable");
  return *found;
}

} // namespace

NodeId ProofBuilder::resolve(NodeId a, NodeId b) {
  Var p = clash(node(a).clause, node(b).clause);
  bool a_pos = node(a).clause.contains(Lit(p, true));
  return a_pos ? add_resolvent(p, a, b) : add_resolvent(p, b, a);
}

ResolutionProof ProofBuilder::build(NodeId root) const {
  if (root >= nodes_.size())
    throw ValidationError(ValidationError::Kind::BadResolvent, root, "root does not exist");
  enum : unsigned char { White, Grey, Black };
  std::vector<unsigned char> color(nodes_.size(), White);
  std::vector<NodeId> order;
  std::vector<std::pair<NodeId, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [id, expanded] = stack.back();
    stack.pop_back();
    if (expanded) {
      color[id] = Black;
      order.push_back(id);
      continue;
    }
    if (color[id] == Black) continue;
    if (color[id] == Grey) throw ValidationError(ValidationError::Kind::Cycle, id, "");
    color[id] = Grey;
    stack.emplace_back(id, true);
    const ProofNode& n = nodes_[id];
    if (n.leaf) continue;
    for (NodeId child : {n.neg, n.pos}) {
      if (child >= nodes_.size())
        throw ValidationError(ValidationError::Kind::BadResolvent, id, "dangling antecedent");
      if (color[child] == Grey) throw ValidationError(ValidationError::Kind::Cycle, child, "");
      if (color[child] == White) stack.emplace_back(child, false);
    }
  }

  std::vector<NodeId> renum(nodes_.size(), 0);
  ResolutionProof proof;
  proof.nodes_.reserve(order.size());
  for (NodeId old : order) {
    renum[old] = static_cast<NodeId>(proof.nodes_.size());
    ProofNode n = nodes_[old];
    if (!n.leaf) {
      n.pos = renum[n.pos];
      n.neg = renum[n.neg];
    }
    proof.nodes_.push_back(std::move(n));
  }
  return proof;
}

std::optional<ValidationError> validate_proof(const ResolutionProof& proof, const PartitionedCnf& cnf,
                                              ValidateOptions options) {
  using K = ValidationError::Kind;
  if (proof.size() == 0) return ValidationError(K::RootNotEmpty, 0, "empty proof");
  for (NodeId id = 0; id < proof.size(); ++id) {
    const ProofNode& n = proof.node(id);
    if (n.leaf) {
      if (n.partition < 1 || n.partition > cnf.num_partitions())
        return ValidationError(K::BadLeaf, id, "no partition " + std::to_string(n.partition));
      const auto& part = cnf.partition(n.partition);
      if (std::find(part.begin(), part.end(), n.clause) == part.end())
        return ValidationError(K::BadLeaf, id,
                               n.clause.to_string() + " is not in partition " +
                                   std::to_string(n.partition));
      continue;
    }
    if (n.pos >= id || n.neg >= id) return ValidationError(K::Cycle, id, "antecedent not earlier");
    auto r = resolvent(proof.node(n.pos).clause, proof.node(n.neg).clause, n.pivot);
    if (!r || *r != n.clause)
      return ValidationError(K::BadResolvent, id,
                             "declared " + n.clause.to_string() + " on pivot " +
                                 std::to_string(n.pivot.index()));
  }
  if (options.require_refutation && !proof.node(proof.root()).clause.empty())
    return ValidationError(K::RootNotEmpty, proof.root(), proof.node(proof.root()).clause.to_string());
  return std::nullopt;
}

ResolutionProof regroup_proof(const ResolutionProof& proof,
                              const std::vector<std::vector<std::size_t>>& groups) {
  std::vector<std::size_t> group_of;
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (std::size_t k : groups[g]) {
      if (k >= group_of.size()) group_of.resize(k + 1, 0);
      group_of[k] = g + 1;
    }
  ProofBuilder b;
  for (const ProofNode& n : proof.nodes()) {
    if (!n.leaf) {
      b.add_inner(n.clause, n.pivot, n.pos, n.neg);
      continue;
    }
    if (n.partition >= group_of.size() || group_of[n.partition] == 0)
      throw RangeError("partition " + std::to_string(n.partition) + " is in no group");
    b.add_leaf(n.clause, group_of[n.partition]);
  }
  return b.build(proof.root());
}

ChainError::ChainError(Kind kind, const std::string& detail)
    : Error(std::string(kind == Kind::NoPivot          ? "NoPivot"
                        : kind == Kind::AmbiguousPivot ? "AmbiguousPivot"
                        : kind == Kind::TooShort       ? "TooShort"
                                                       : "Mismatch") +
            ": " + detail),
      kind_(kind) {}

std::vector<ChainStep> chain_to_binary(std::span<const Clause> clauses) {
  if (clauses.size() < 2) throw ChainError(ChainError::Kind::TooShort, "a chain needs two clauses");
  std::vector<ChainStep> steps;
  steps.reserve(clauses.size() - 1);
  Clause acc = clauses[0];
  for (std::size_t i = 1; i < clauses.size(); ++i) {
    Var p = clash(acc, clauses[i]);
    bool acc_pos = acc.contains(Lit(p, true));
    auto r = acc_pos ? resolvent(acc, clauses[i], p) : resolvent(clauses[i], acc, p);
    // clash() guarantees a single opposite pair, so the resolvent is never tautological.
    steps.push_back(ChainStep{p, *r, acc_pos});
    acc = std::move(*r);
  }
  return steps;
}

} // namespace itp
