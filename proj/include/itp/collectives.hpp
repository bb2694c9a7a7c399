#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "itp/expr.hpp"
#include "itp/labeling.hpp"
#include "itp/proof.hpp"
#include "itp/sat.hpp"
#include "itp/tree.hpp"

namespace itp {

enum class CollectiveKind { PI, SA, BGSA, GSA, STI, Tree, Symmetry };
const char* to_string(CollectiveKind k);
// pi | sa | bgsa | gsa | sti | tree. Throws UsageError.
CollectiveKind parse_collective(std::string_view text);

struct Slot {
  std::string name; // e.g. "S2", "T1", "node 3"
  Configuration config;
  LabelingRule rule;
  Expr itp;
};

struct Obligation {
  std::string description; // e.g. "I[S0] & phi1 => I[S1]"
  std::vector<Expr> lhs;   // conjuncts
  Expr rhs;
  bool holds = true;
  Assignment counter_model; // over the formula's variables, when !holds
};

struct CollectiveReport {
  CollectiveKind kind;
  std::vector<Slot> slots;
  std::vector<Obligation> obligations;

  bool holds() const;
  // "OBLIGATION <k> HOLDS|FAILS [<model>]" per obligation, preceded by
  // "# "-prefixed human-readable lines when `verbose`.
  std::string to_text(bool verbose = true) const;
};

struct CheckOptions {
  std::uint64_t seed = 0;
  std::uint64_t conflict_limit = 0;
  // 1 runs the serial reference path; more uses OpenMP threads for slot
  // interpolation and obligation checks.
  int jobs = 1;
  // Refutation to use instead of solving the formula; must validate.
  const ResolutionProof* proof = nullptr;
};

// Every check computes one refutation of `cnf` (or uses options.proof) and
// derives all slot interpolants from it. Throws NotUnsat when the formula is
// satisfiable, UsageError when the family has the wrong arity.

// n partitions, n+1 slots S_0..S_n with A = {1..i}:
//   I_i ∧ φ_{i+1} ⟹ I_{i+1} for i = 0..n-1.
CollectiveReport check_pi(ExprManager& mgr, const PartitionedCnf& cnf, const std::vector<LabelingRule>& family,
                          const CheckOptions& options = {});
// n partitions, n slots with A = {i} (an (n+1)-th slot is accepted and ignored):
//   ∧ I_i ⟹ ⊥.
CollectiveReport check_sa(ExprManager& mgr, const PartitionedCnf& cnf, const std::vector<LabelingRule>& family,
                          const CheckOptions& options = {});
// n+1 partitions, n+1 slots: A = {i} for i ≤ n, A = {1..n} for slot n+1:
//   ∧_{i≤n} I_i ⟹ I_{n+1}.
CollectiveReport check_gsa(ExprManager& mgr, const PartitionedCnf& cnf, const std::vector<LabelingRule>& family,
                           const CheckOptions& options = {});
// check_gsa restricted to three partitions.
CollectiveReport check_bgsa(ExprManager& mgr, const PartitionedCnf& cnf, const std::vector<LabelingRule>& family,
                            const CheckOptions& options = {});
// n partitions, 2n+1 slots S_0..S_n, T_1..T_n (A = {1..i} and A = {i}):
//   I[S_i] ∧ I[T_{i+1}] ⟹ I[S_{i+1}] for i = 0..n-1.
CollectiveReport check_sti(ExprManager& mgr, const PartitionedCnf& cnf, const std::vector<LabelingRule>& family,
                           const CheckOptions& options = {});
// One slot per tree node (ascending id) with A = partitions of its subtree:
//   ∧_{children j} I_j ∧ φ_i ⟹ I_i, with ⊥ on the right at the root.
CollectiveReport check_tree(ExprManager& mgr, const PartitionedCnf& cnf, const Tree& tree,
                            const std::vector<LabelingRule>& family, const CheckOptions& options = {});
// Two partitions: Itp(φ1|φ2) ⟺ ¬Itp(φ2|φ1), as two implications.
CollectiveReport check_symmetry(ExprManager& mgr, const PartitionedCnf& cnf, const LabelingRule& rule,
                                const CheckOptions& options = {});

} // namespace itp
