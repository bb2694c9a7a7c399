#pragma once

#include <cstddef>
#include <vector>

#include "itp/expr.hpp"
#include "itp/labeling.hpp"
#include "itp/proof.hpp"

namespace itp {

struct InterpolationStats {
  std::size_t node_visits = 0;
  // Literal slots touched while deriving labels and leaf interpolants.
  std::size_t literal_work = 0;
};

struct PartialInterpolants {
  // Indexed by proof node id.
  std::vector<Expr> itp;
  // labels[id][k] is the effective label of the k-th literal of node id.
  std::vector<std::vector<Label>> labels;
};

// One topological sweep of the labeled interpolation rules over `proof`,
// relative to spec.config. Leaves: C↾b for A-side clauses, ¬(C↾a) for
// B-side clauses. Inner nodes combine by the joined pivot label:
// a → I⁺ ∨ I⁻, b → I⁺ ∧ I⁻, ab → (I⁺ ∨ p) ∧ (I⁻ ∨ ¬p).
//
// With no clauses on the A side the result is ⊤, with none on the B side it
// is ⊥; both fall out of the rules since every variable is then class-forced.
// Throws SpecIncomplete, UnknownVar.
PartialInterpolants partial_interpolants(ExprManager& mgr, const ResolutionProof& proof,
                                         const PartitionedCnf& cnf, const LabelingSpec& spec,
                                         InterpolationStats* stats = nullptr);

Expr interpolate(ExprManager& mgr, const ResolutionProof& proof, const PartitionedCnf& cnf,
                 const LabelingSpec& spec, InterpolationStats* stats = nullptr);

} // namespace itp
