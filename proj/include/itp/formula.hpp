#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "itp/errors.hpp"

namespace itp {

// Propositional variable, 1-based as in DIMACS.
class Var {
public:
  constexpr Var() = default;
  constexpr explicit Var(unsigned index) : index_(index) {}

  constexpr unsigned index() const { return index_; }
  constexpr bool valid() const { return index_ >= 1; }

  constexpr auto operator<=>(const Var&) const = default;

private:
  unsigned index_ = 0;
};

class Lit {
public:
  constexpr Lit() = default;
  constexpr Lit(Var v, bool positive) : var_(v), positive_(positive) {}

  // DIMACS integer: positive for p, negative for -p.
  static Lit from_dimacs(long value) {
    return value > 0 ? Lit(Var(static_cast<unsigned>(value)), true)
                     : Lit(Var(static_cast<unsigned>(-value)), false);
  }
  long to_dimacs() const {
    return positive_ ? static_cast<long>(var_.index()) : -static_cast<long>(var_.index());
  }

  constexpr Var var() const { return var_; }
  constexpr bool positive() const { return positive_; }
  constexpr Lit operator~() const { return Lit(var_, !positive_); }

  // Orders by variable first, negative before positive.
  constexpr auto operator<=>(const Lit&) const = default;

private:
  Var var_;
  bool positive_ = true;
};

inline Lit pos(unsigned v) { return Lit(Var(v), true); }
inline Lit neg(unsigned v) { return Lit(Var(v), false); }

// A canonical clause: literals sorted by variable, one literal per variable.
// Construction rejects tautologies, so two equal clauses are structurally equal.
class Clause {
public:
  Clause() = default;
  explicit Clause(std::vector<Lit> lits);
  Clause(std::initializer_list<Lit> lits) : Clause(std::vector<Lit>(lits)) {}

  std::span<const Lit> lits() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }
  const Lit& operator[](std::size_t i) const { return lits_[i]; }

  // Literal over `v`, or nullptr if the clause does not mention it.
  const Lit* find(Var v) const;
  bool contains(Lit l) const;

  bool operator==(const Clause&) const = default;

  std::string to_string() const;

private:
  std::vector<Lit> lits_;
};

struct ClauseHash {
  std::size_t operator()(const Clause& c) const;
};

// Φ = φ1 ∧ … ∧ φn. Partition indices are 1-based at the API surface; an empty
// partition stands for ⊤.
class PartitionedCnf {
public:
  PartitionedCnf() = default;
  PartitionedCnf(unsigned num_vars, std::vector<std::vector<Clause>> partitions);

  unsigned num_vars() const { return num_vars_; }
  std::size_t num_partitions() const { return partitions_.size(); }

  // 1-based partition access.
  const std::vector<Clause>& partition(std::size_t k) const;
  const std::vector<std::vector<Clause>>& partitions() const { return partitions_; }
  std::size_t num_clauses() const;

  // Partitions (1-based) containing exactly this clause.
  std::vector<std::size_t> partitions_containing(const Clause& c) const;

  // Merges consecutive partitions: groups[i] lists the original partition
  // indices that form new partition i+1. Used for reductions over Φ.
  PartitionedCnf regroup(const std::vector<std::vector<std::size_t>>& groups) const;
  // Appends `count` empty (⊤) partitions.
  PartitionedCnf padded(std::size_t count) const;

  bool operator==(const PartitionedCnf&) const = default;

private:
  unsigned num_vars_ = 0;
  std::vector<std::vector<Clause>> partitions_;
};

// Total or partial truth assignment indexed by variable.
class Assignment {
public:
  Assignment() = default;
  explicit Assignment(unsigned num_vars) : vals_(num_vars + 1, -1) {}

  void set(Var v, bool value) {
    if (v.index() >= vals_.size()) vals_.resize(v.index() + 1, -1);
    vals_[v.index()] = value ? 1 : 0;
  }
  bool has(Var v) const { return v.index() < vals_.size() && vals_[v.index()] >= 0; }
  // Throws UnassignedVar when `v` has no value.
  bool get(Var v) const {
    if (!has(v)) throw UnassignedVar(v.index());
    return vals_[v.index()] == 1;
  }
  bool satisfies(Lit l) const { return get(l.var()) == l.positive(); }
  unsigned max_var() const { return vals_.empty() ? 0 : static_cast<unsigned>(vals_.size() - 1); }

  // Restriction to variables 1..num_vars.
  Assignment restricted(unsigned num_vars) const;
  // DIMACS-style literal list of the assigned variables, e.g. "-1 2 -3".
  std::string to_string() const;

  bool operator==(const Assignment&) const = default;

private:
  std::vector<signed char> vals_;
};

// Partitioned DIMACS: "p cnf V C" header, "c part k" opens partition k.
PartitionedCnf parse_dimacs(std::string_view text);
PartitionedCnf read_dimacs_file(const std::string& path);
std::string write_dimacs(const PartitionedCnf& cnf);

std::ostream& operator<<(std::ostream& os, Lit l);
std::ostream& operator<<(std::ostream& os, const Clause& c);

} // namespace itp

template <> struct std::hash<itp::Var> {
  std::size_t operator()(itp::Var v) const noexcept { return std::hash<unsigned>{}(v.index()); }
};
