#pragma once

#include <vector>

#include "itp/expr.hpp"
#include "itp/formula.hpp"

namespace itp {

struct TseitinResult {
  std::vector<Clause> clauses;
  Lit output;
  unsigned next_fresh;
};

// Definitional CNF of `e`: the returned clauses force `output ↔ e`. Fresh
// variables are numbered fresh_base, fresh_base+1, … in DAG post-order; a
// literal leaf needs no clause and is returned as the output itself. Constants
// get one fresh variable pinned by a unit clause.
TseitinResult tseitin_encode(Expr e, unsigned fresh_base);

} // namespace itp
