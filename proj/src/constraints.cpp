#include "itp/constraints.hpp"

#include <sstream>

namespace itp {

OccurrenceTable occurrence_table(const PartitionedCnf& cnf) {
  OccurrenceTable occ;
  for (std::size_t k = 1; k <= cnf.num_partitions(); ++k)
    for (const Clause& c : cnf.partition(k))
      for (Lit l : c) occ[l.var().index()].insert(k);
  return occ;
}

std::optional<Label> LabelingVector::at_slot(std::size_t slot) const {
  for (std::size_t k = 0; k < slots.size(); ++k)
    if (slots[k] == slot) return labels[k];
  return std::nullopt;
}

std::string Violation::to_string() const {
  std::ostringstream os;
  os << "VAR " << vector.var << " PARTS {";
  bool first = true;
  for (std::size_t p : vector.parts) {
    os << (first ? "" : ",") << p;
    first = false;
  }
  os << "} VECTOR (";
  for (std::size_t k = 0; k < vector.labels.size(); ++k)
    os << (k ? "," : "") << itp::to_string(vector.labels[k]);
  os << ") RULE " << rule;
  return os.str();
}

namespace {

Label per_variable_label(const LabelingRule& rule, unsigned var, std::size_t slot) {
  if (std::holds_alternative<PerOccurrence>(rule))
    throw SpecIncomplete("slot " + std::to_string(slot) + ": static checks need per-variable labelings");
  auto l = rule_label(rule, 0, Var(var));
  if (!l)
    throw SpecIncomplete("slot " + std::to_string(slot) + " has no label for AB variable " + std::to_string(var));
  return *l;
}

bool is_ab(const std::set<std::size_t>& parts, const Configuration& config) {
  bool in_a = false, in_b = false;
  for (std::size_t p : parts) (config.in_a(p) ? in_a : in_b) = true;
  return in_a && in_b;
}

// (x, y) ⪯ {(ab,ab), (b,a), (a,b)}: ⪯ some member, componentwise.
bool pair_ok(Label x, Label y) {
  static constexpr std::pair<Label, Label> allowed[] = {
      {Label::ab, Label::ab}, {Label::b, Label::a}, {Label::a, Label::b}};
  for (auto [p, q] : allowed)
    if (leq(x, p) && leq(y, q)) return true;
  return false;
}

Configuration range(std::size_t first, std::size_t last) {
  Configuration c;
  for (std::size_t k = first; k <= last; ++k) c.a_parts.insert(k);
  return c;
}

// Occurrence table of a regrouped formula: group g+1 holds groups[g].
OccurrenceTable regroup_occurrences(const OccurrenceTable& occ, const std::vector<std::set<std::size_t>>& groups) {
  OccurrenceTable out;
  for (const auto& [v, parts] : occ)
    for (std::size_t g = 0; g < groups.size(); ++g)
      for (std::size_t p : parts)
        if (groups[g].count(p)) {
          out[v].insert(g + 1);
          break;
        }
  return out;
}

void append(Violations& out, Violations more, const std::string& prefix, const OccurrenceTable& original) {
  for (Violation& v : more) {
    v.rule = prefix + v.rule;
    v.vector.parts = original.at(v.vector.var);
    out.push_back(std::move(v));
  }
}

} // namespace

std::vector<LabelingVector> labeling_vectors(const OccurrenceTable& occ, const std::vector<Configuration>& configs,
                                             const std::vector<LabelingRule>& family) {
  if (family.size() < configs.size())
    throw UsageError("family has " + std::to_string(family.size()) + " labelings for " +
                     std::to_string(configs.size()) + " slots");
  std::vector<LabelingVector> out;
  for (const auto& [v, parts] : occ) {
    LabelingVector vec{v, parts, {}, {}};
    for (std::size_t k = 0; k < configs.size(); ++k) {
      if (!is_ab(parts, configs[k])) continue;
      vec.slots.push_back(k + 1);
      vec.labels.push_back(per_variable_label(family[k], v, k + 1));
    }
    if (!vec.slots.empty()) out.push_back(std::move(vec));
  }
  return out;
}

Violations check_cc_bgsa(const std::vector<LabelingVector>& vectors) {
  Violations out;
  for (const LabelingVector& v : vectors) {
    const bool p1 = v.parts.count(1), p2 = v.parts.count(2), p3 = v.parts.count(3);
    auto l1 = v.at_slot(1), l2 = v.at_slot(2), l3 = v.at_slot(3);
    if (p1 && p2 && !p3) {
      if (l1 && l2 && !pair_ok(*l1, *l2)) out.push_back({v, "alpha"});
    } else if (!p1 && p2 && p3) {
      if (l2 && l3 && !leq(*l2, *l3)) out.push_back({v, "beta"});
    } else if (p1 && !p2 && p3) {
      if (l1 && l3 && !leq(*l1, *l3)) out.push_back({v, "gamma"});
    } else if (p1 && p2 && p3) {
      if (l1 && l2 && !pair_ok(*l1, *l2)) out.push_back({v, "delta-pair"});
      if (l1 && l3 && !leq(*l1, *l3)) out.push_back({v, "delta-13"});
      if (l2 && l3 && !leq(*l2, *l3)) out.push_back({v, "delta-23"});
    }
  }
  return out;
}

namespace {

// Among the given positions: an a forces b on every other position.
bool a_forces_b(const LabelingVector& v, std::size_t upto_slot) {
  std::size_t count = 0, a_count = 0, b_count = 0;
  for (std::size_t k = 0; k < v.slots.size(); ++k) {
    if (v.slots[k] > upto_slot) continue;
    ++count;
    if (v.labels[k] == Label::a) ++a_count;
    if (v.labels[k] == Label::b) ++b_count;
  }
  return a_count == 0 || (a_count == 1 && b_count == count - 1);
}

} // namespace

Violations check_cc_ngsa(const std::vector<LabelingVector>& vectors, std::size_t n) {
  Violations out;
  for (const LabelingVector& v : vectors) {
    if (!a_forces_b(v, n)) out.push_back({v, "ngsa-1"});
    if (auto top = v.at_slot(n + 1)) {
      for (std::size_t k = 0; k < v.slots.size(); ++k)
        if (v.slots[k] != n + 1 && !leq(v.labels[k], *top)) {
          out.push_back({v, "ngsa-2"});
          break;
        }
    }
  }
  return out;
}

Violations check_cc_nsa(const std::vector<LabelingVector>& vectors) {
  Violations out;
  for (const LabelingVector& v : vectors)
    if (!a_forces_b(v, SIZE_MAX)) out.push_back({v, "nsa"});
  return out;
}

Violations check_cc_pi_step(const std::vector<LabelingVector>& vectors) {
  Violations out;
  for (const LabelingVector& v : vectors) {
    auto l1 = v.at_slot(1), l2 = v.at_slot(2);
    if (l1 && l2 && !leq(*l1, *l2)) out.push_back({v, "pi-step"});
  }
  return out;
}

Prediction predict(CollectiveKind kind, const PartitionedCnf& cnf, const std::vector<LabelingRule>& family,
                   const Tree* tree) {
  const OccurrenceTable occ = occurrence_table(cnf);
  const std::size_t n = cnf.num_partitions();
  Violations found;
  auto need = [&](std::size_t want, const char* what) {
    if (family.size() != want)
      throw UsageError(std::string(what) + " needs a family of " + std::to_string(want) + " labelings, got " +
                       std::to_string(family.size()));
  };

  switch (kind) {
  case CollectiveKind::PI: {
    need(n + 1, "pi");
    for (std::size_t i = 0; i < n; ++i) {
      auto vecs = labeling_vectors(occ, {range(1, i), range(1, i + 1)}, {family[i], family[i + 1]});
      append(found, check_cc_pi_step(vecs), "step-" + std::to_string(i) + ":", occ);
    }
    break;
  }
  case CollectiveKind::SA: {
    if (family.size() != n && family.size() != n + 1)
      throw UsageError("sa needs a family of " + std::to_string(n) + " (or " + std::to_string(n + 1) +
                       ") labelings, got " + std::to_string(family.size()));
    std::vector<Configuration> configs;
    for (std::size_t i = 1; i <= n; ++i) configs.push_back(Configuration{{i}});
    found = check_cc_nsa(labeling_vectors(occ, configs, family));
    break;
  }
  case CollectiveKind::BGSA:
  case CollectiveKind::GSA: {
    if (kind == CollectiveKind::BGSA && n != 3)
      throw UsageError("bgsa needs exactly 3 partitions, got " + std::to_string(n));
    if (n < 2) throw UsageError("gsa needs at least 2 partitions");
    need(n, kind == CollectiveKind::BGSA ? "bgsa" : "gsa");
    std::vector<Configuration> configs;
    for (std::size_t i = 1; i < n; ++i) configs.push_back(Configuration{{i}});
    configs.push_back(range(1, n - 1));
    auto vecs = labeling_vectors(occ, configs, family);
    found = kind == CollectiveKind::BGSA ? check_cc_bgsa(vecs) : check_cc_ngsa(vecs, n - 1);
    break;
  }
  case CollectiveKind::STI: {
    need(2 * n + 1, "sti");
    const std::vector<Configuration> configs{Configuration{{1}}, Configuration{{2}}, range(1, 2)};
    for (std::size_t i = 0; i < n; ++i) {
      std::set<std::size_t> g1, g3;
      for (std::size_t k = 1; k <= i; ++k) g1.insert(k);
      for (std::size_t k = i + 2; k <= n; ++k) g3.insert(k);
      auto rocc = regroup_occurrences(occ, {g1, {i + 1}, g3});
      auto vecs = labeling_vectors(rocc, configs, {family[i], family[n + i + 1], family[i + 1]});
      append(found, check_cc_bgsa(vecs), "step-" + std::to_string(i) + ":", occ);
    }
    break;
  }
  case CollectiveKind::Tree: {
    if (!tree) throw UsageError("tree prediction needs a tree");
    need(tree->size(), "tree");
    std::set<std::size_t> all;
    for (std::size_t k = 1; k <= n; ++k) all.insert(k);
    for (const TreeNode& parent : tree->nodes()) {
      const auto& kids = tree->children(parent.id);
      if (kids.empty()) continue;
      // Groups: one per child subtree, the parent's own formula, the rest.
      std::vector<std::set<std::size_t>> groups;
      std::vector<LabelingRule> slot_rules;
      std::vector<Configuration> configs;
      for (unsigned c : kids) {
        groups.push_back(tree->subtree_partitions(c));
        slot_rules.push_back(family[tree->slot_of(c)]);
        configs.push_back(Configuration{{groups.size()}});
      }
      const std::size_t m = kids.size();
      groups.push_back(parent.partition ? std::set<std::size_t>{*parent.partition} : std::set<std::size_t>{});
      std::set<std::size_t> rest = all;
      for (std::size_t p : tree->subtree_partitions(parent.id)) rest.erase(p);
      groups.push_back(rest);
      configs.push_back(range(1, m + 1));
      slot_rules.push_back(family[tree->slot_of(parent.id)]);
      auto vecs = labeling_vectors(regroup_occurrences(occ, groups), configs, slot_rules);
      append(found, check_cc_ngsa(vecs, m), "node-" + std::to_string(parent.id) + ":", occ);
    }
    break;
  }
  case CollectiveKind::Symmetry:
    throw UnsupportedCollective("no labeling constraints for symmetry");
  }
  return Prediction{found.empty(), std::move(found)};
}

std::vector<LabelingRule> complete_family(const std::vector<std::optional<LabelingRule>>& partial) {
  std::vector<LabelingRule> out;
  out.reserve(partial.size());
  for (const auto& r : partial) out.push_back(r ? *r : mcmillan());
  return out;
}

} // namespace itp
