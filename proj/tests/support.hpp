#pragma once

// Test-only oracles and generators.

#include <algorithm>
#include <array>
#include <optional>
#include <random>
#include <vector>

#include "itp/expr.hpp"
#include "itp/formula.hpp"
#include "itp/labeling.hpp"

namespace itp::test {

// Truth-table satisfiability over 1..num_vars.
inline std::optional<Assignment> brute_force_sat(const PartitionedCnf& cnf) {
  const unsigned n = cnf.num_vars();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    Assignment a(n);
    for (unsigned v = 1; v <= n; ++v) a.set(Var(v), (bits >> (v - 1)) & 1u);
    bool ok = true;
    for (const auto& part : cnf.partitions()) {
      for (const Clause& c : part) {
        bool sat = false;
        for (Lit l : c) sat = sat || a.satisfies(l);
        if (!sat) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) return a;
  }
  return std::nullopt;
}

// Truth-table implication check over 1..num_vars.
inline bool brute_force_implies(Expr lhs, Expr rhs, unsigned n) {
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    Assignment a(n);
    for (unsigned v = 1; v <= n; ++v) a.set(Var(v), (bits >> (v - 1)) & 1u);
    if (eval(lhs, a) && !eval(rhs, a)) return false;
  }
  return true;
}

inline Clause random_clause(std::mt19937_64& rng, unsigned num_vars, unsigned max_len, unsigned min_len = 1) {
  std::uniform_int_distribution<unsigned> len(std::min(min_len, max_len), max_len);
  std::uniform_int_distribution<unsigned> var(1, num_vars);
  std::vector<Lit> lits;
  unsigned k = std::min(len(rng), num_vars);
  std::vector<bool> used(num_vars + 1, false);
  while (lits.size() < k) {
    unsigned v = var(rng);
    if (used[v]) continue;
    used[v] = true;
    lits.emplace_back(Var(v), (rng() & 1u) != 0);
  }
  return Clause(std::move(lits));
}

inline PartitionedCnf random_cnf(std::mt19937_64& rng, unsigned num_vars, unsigned num_clauses,
                                 std::size_t num_parts, unsigned max_len = 3, unsigned min_len = 1) {
  std::vector<std::vector<Clause>> parts(num_parts);
  std::uniform_int_distribution<std::size_t> which(0, num_parts - 1);
  for (unsigned i = 0; i < num_clauses; ++i) {
    // every partition gets at least one clause
    std::size_t p = i < num_parts ? i : which(rng);
    parts[p].push_back(random_clause(rng, num_vars, max_len, min_len));
  }
  return PartitionedCnf(num_vars, std::move(parts));
}

// Draws random CNFs until one is unsatisfiable by the truth table.
inline PartitionedCnf random_unsat_cnf(std::mt19937_64& rng, unsigned num_vars, unsigned num_clauses,
                                       std::size_t num_parts, unsigned max_len = 3, unsigned min_len = 1) {
  for (;;) {
    PartitionedCnf cnf = random_cnf(rng, num_vars, num_clauses, num_parts, max_len, min_len);
    if (!brute_force_sat(cnf)) return cnf;
  }
}

// Per-variable labeling over 1..num_vars; labels drawn with weights (b, ab, a).
inline LabelingRule random_labeling(std::mt19937_64& rng, unsigned num_vars, std::array<int, 3> weights = {1, 1, 1}) {
  std::discrete_distribution<int> pick(weights.begin(), weights.end());
  PerVariable pv;
  for (unsigned v = 1; v <= num_vars; ++v) pv.labels[v] = static_cast<Label>(pick(rng));
  return pv;
}

// L ⪯ L': every label of the second is at least the first.
inline std::pair<LabelingRule, LabelingRule> random_ordered_pair(std::mt19937_64& rng, unsigned num_vars) {
  PerVariable lo, hi;
  for (unsigned v = 1; v <= num_vars; ++v) {
    int x = rng() % 3, y = rng() % 3;
    if (x > y) std::swap(x, y);
    lo.labels[v] = static_cast<Label>(x);
    hi.labels[v] = static_cast<Label>(y);
  }
  return {lo, hi};
}

inline std::vector<LabelingRule> random_family(std::mt19937_64& rng, std::size_t size, unsigned num_vars,
                                               std::array<int, 3> weights = {1, 1, 1}) {
  std::vector<LabelingRule> out;
  for (std::size_t i = 0; i < size; ++i) {
    switch (rng() % 4) {
    case 0: out.push_back(mcmillan()); break;
    case 1: out.push_back(pudlak()); break;
    default: out.push_back(random_labeling(rng, num_vars, weights)); break;
    }
  }
  return out;
}

} // namespace itp::test
