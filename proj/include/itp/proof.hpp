#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "itp/formula.hpp"

namespace itp {

using NodeId = std::uint32_t;

struct ProofNode {
  Clause clause;
  bool leaf = true;
  std::size_t partition = 0; // 1-based, leaves only
  Var pivot;                 // inner nodes only
  NodeId pos = 0;            // antecedent containing the pivot positively
  NodeId neg = 0;            // antecedent containing the pivot negatively
};

class ValidationError : public Error {
public:
  enum class Kind { BadLeaf, BadResolvent, RootNotEmpty, Cycle };
  ValidationError(Kind kind, NodeId node, const std::string& detail);
  Kind kind() const { return kind_; }
  NodeId node() const { return node_; }

private:
  Kind kind_;
  NodeId node_;
};

const char* to_string(ValidationError::Kind kind);

// A resolution derivation stored in topological order: every antecedent id is
// smaller than the id of the node that uses it, and every node is reachable
// backward from the root (the last node). Immutable once built.
class ResolutionProof {
public:
  ResolutionProof() = default;

  std::size_t size() const { return nodes_.size(); }
  NodeId root() const { return static_cast<NodeId>(nodes_.size() - 1); }
  const ProofNode& node(NodeId id) const { return nodes_.at(id); }
  std::span<const ProofNode> nodes() const { return nodes_; }
  std::size_t num_leaves() const;
  // Largest clause size; the S of the O(N·S) interpolation bound.
  std::size_t max_clause_size() const;

private:
  friend class ProofBuilder;
  std::vector<ProofNode> nodes_;
};

// Collects nodes in any order (antecedents may be added later than their
// users) and produces a trimmed ResolutionProof.
class ProofBuilder {
public:
  NodeId add_leaf(Clause clause, std::size_t partition);
  // Inner node with an explicitly declared clause; not checked here.
  NodeId add_inner(Clause clause, Var pivot, NodeId pos, NodeId neg);
  // Inner node whose clause is the resolvent of the two antecedents.
  // Throws ValidationError(BadResolvent) if they do not clash on `pivot`.
  NodeId add_resolvent(Var pivot, NodeId pos, NodeId neg);
  // Resolves `a` and `b` on their unique clashing variable, orienting the
  // antecedents. Throws ChainError when the pivot is missing or ambiguous.
  NodeId resolve(NodeId a, NodeId b);

  const ProofNode& node(NodeId id) const { return nodes_.at(id); }
  std::size_t size() const { return nodes_.size(); }

  // Keeps the nodes reachable from `root`, renumbered topologically.
  // Throws ValidationError(Cycle) on a cyclic derivation.
  ResolutionProof build(NodeId root) const;

private:
  std::vector<ProofNode> nodes_;
};

// Resolvent of two clauses on `pivot`, or nullopt if they do not clash there
// or the result would be tautological.
std::optional<Clause> resolvent(const Clause& pos, const Clause& neg, Var pivot);

struct ValidateOptions {
  // When false the root may be any clause (a derivation, not a refutation).
  bool require_refutation = true;
};

// Checks leaves against their claimed partitions, every inner node against
// the resolution rule and (by default) that the root is ⊥.
std::optional<ValidationError> validate_proof(const ResolutionProof& proof, const PartitionedCnf& cnf,
                                              ValidateOptions options = {});

// The same derivation over a regrouped formula: a leaf tagged k is retagged
// with the 1-based index of the group containing k. Throws RangeError when a
// leaf's partition is in no group.
ResolutionProof regroup_proof(const ResolutionProof& proof,
                              const std::vector<std::vector<std::size_t>>& groups);

class ChainError : public Error {
public:
  enum class Kind { NoPivot, AmbiguousPivot, TooShort, Mismatch };
  ChainError(Kind kind, const std::string& detail);
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

struct ChainStep {
  Var pivot;
  Clause resolvent;
  bool accumulator_positive; // accumulator held the pivot positively
};

// Left fold of a resolution chain: step i resolves the running resolvent with
// clauses[i+1] on their unique clashing variable.
std::vector<ChainStep> chain_to_binary(std::span<const Clause> clauses);

} // namespace itp
