#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "itp/expr.hpp"
#include "itp/formula.hpp"
#include "itp/proof.hpp"

namespace itp {

struct SolverOptions {
  // 0 keeps the order fully deterministic by variable index; any other value
  // perturbs initial activities and phases (still reproducible per seed).
  std::uint64_t seed = 0;
  // 0 = unlimited. Exceeding the budget throws ResourceLimit.
  std::uint64_t conflict_limit = 0;
  // When false an Unsat result carries no proof.
  bool log_proof = true;
};

struct SolverStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t restarts = 0;
};

class SolveResult {
public:
  static SolveResult sat(Assignment model, SolverStats stats);
  static SolveResult unsat(std::optional<ResolutionProof> proof, SolverStats stats);

  bool is_sat() const { return sat_; }
  // Total over 1..num_vars. Only for Sat results.
  const Assignment& model() const;
  // Trimmed refutation; only for Unsat results solved with log_proof.
  const ResolutionProof& proof() const;
  bool has_proof() const { return proof_.has_value(); }
  const SolverStats& stats() const { return stats_; }

private:
  bool sat_ = false;
  Assignment model_;
  std::optional<ResolutionProof> proof_;
  SolverStats stats_;
};

// CDCL with two watched literals, VSIDS, phase saving and Luby restarts. On
// Unsat every learned clause is logged as the chain of clauses its first-UIP
// analysis resolved, and the refutation is rebuilt from the chains reachable
// from ⊥. Leaves keep the partition tag of the input clause they came from.
SolveResult solve(const PartitionedCnf& cnf, const SolverOptions& options = {});

struct ImplicationResult {
  bool holds = true;
  // Satisfies lhs ∧ ¬rhs; restricted to 1..num_vars. Empty when holds.
  Assignment counter_model;
};

// Decides lhs ⟹ rhs by refuting Tseitin(lhs) ∧ out_lhs ∧ Tseitin(rhs) ∧ ¬out_rhs.
ImplicationResult check_implication(Expr lhs, Expr rhs, unsigned num_vars,
                                    const SolverOptions& options = {});
ImplicationResult check_equivalence(Expr a, Expr b, unsigned num_vars,
                                    const SolverOptions& options = {});

} // namespace itp
