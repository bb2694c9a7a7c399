#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "itp/collectives.hpp"
#include "itp/labeling.hpp"
#include "itp/tree.hpp"

namespace itp {

// Var index → partitions (1-based) in which it occurs.
using OccurrenceTable = std::map<unsigned, std::set<std::size_t>>;
OccurrenceTable occurrence_table(const PartitionedCnf& cnf);

// Labels one variable receives from the slots of a family in which it has
// class AB. slots[k] is the 1-based slot that produced labels[k].
struct LabelingVector {
  unsigned var = 0;
  std::set<std::size_t> parts;
  std::vector<std::size_t> slots;
  std::vector<Label> labels;

  std::optional<Label> at_slot(std::size_t slot) const;
};

struct Violation {
  LabelingVector vector;
  std::string rule;
  // "VAR <v> PARTS <set> VECTOR <labels> RULE <rule-id>"
  std::string to_string() const;
};

using Violations = std::vector<Violation>;

// Vectors for the slots `configs` (slot k+1 has configs[k]) under `family`.
// Only variables with class AB in at least one slot get a vector. Family
// rules must be per-variable (Uniform or PerVariable); a PerOccurrence rule
// or a missing label throws SpecIncomplete.
std::vector<LabelingVector> labeling_vectors(const OccurrenceTable& occ, const std::vector<Configuration>& configs,
                                             const std::vector<LabelingRule>& family);

// Slots A={1}, A={2}, A={1,2} over three partitions. Rules: alpha (vars in
// φ1φ2), beta (φ2φ3), gamma (φ1φ3), delta-pair, delta-13, delta-23 (φ1φ2φ3).
Violations check_cc_bgsa(const std::vector<LabelingVector>& vectors);
// Slots 1..n with A={i} and slot n+1 with A={1..n}. ngsa-1: if a slot ≤ n has
// a, every other slot ≤ n has b. ngsa-2: every label ⪯ the slot n+1 label.
Violations check_cc_ngsa(const std::vector<LabelingVector>& vectors, std::size_t n);
// Slots with A={i}: an a forces b everywhere else.
Violations check_cc_nsa(const std::vector<LabelingVector>& vectors);
// Adjacent path slots (1 = A={1..i}, 2 = A={1..i+1}): label_1 ⪯ label_2 for
// variables that are AB in both.
Violations check_cc_pi_step(const std::vector<LabelingVector>& vectors);

struct Prediction {
  bool will_hold = true;
  Violations witnesses;
};

// Decides a collective from the labels alone. pi/sa/bgsa/gsa use their
// constraint systems directly; sti checks each step triple (S_i, T_{i+1},
// S_{i+1}) with CC_BGSA over the regrouped formula; tree checks, per parent,
// the GSA constraints with the parent's own formula not abstracted (tree is
// required for CollectiveKind::Tree). Throws UsageError on arity problems,
// UnsupportedCollective for Symmetry.
Prediction predict(CollectiveKind kind, const PartitionedCnf& cnf, const std::vector<LabelingRule>& family,
                   const Tree* tree = nullptr);

// Fills unspecified slots of an n-GSA family with McMillan.
std::vector<LabelingRule> complete_family(const std::vector<std::optional<LabelingRule>>& partial);

} // namespace itp
