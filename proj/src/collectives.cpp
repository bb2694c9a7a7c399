#include "itp/collectives.hpp"

#include <exception>
#include <sstream>

#include "itp/interpolate.hpp"

namespace itp {

const char* to_string(CollectiveKind k) {
  switch (k) {
  case CollectiveKind::PI: return "pi";
  case CollectiveKind::SA: return "sa";
  case CollectiveKind::BGSA: return "bgsa";
  case CollectiveKind::GSA: return "gsa";
  case CollectiveKind::STI: return "sti";
  case CollectiveKind::Tree: return "tree";
  case CollectiveKind::Symmetry: return "symmetry";
  }
  return "?";
}

CollectiveKind parse_collective(std::string_view text) {
  if (text == "pi") return CollectiveKind::PI;
  if (text == "sa") return CollectiveKind::SA;
  if (text == "bgsa") return CollectiveKind::BGSA;
  if (text == "gsa") return CollectiveKind::GSA;
  if (text == "sti") return CollectiveKind::STI;
  if (text == "tree") return CollectiveKind::Tree;
  throw UsageError("unknown collective '" + std::string(text) + "' (pi, sa, bgsa, gsa, sti, tree)");
}

bool CollectiveReport::holds() const {
  for (const auto& o : obligations)
    if (!o.holds) return false;
  return true;
}

std::string CollectiveReport::to_text(bool verbose) const {
  std::ostringstream os;
  if (verbose) {
    os << "# collective " << to_string(kind) << ": " << (holds() ? "HOLDS" : "FAILS") << '\n';
    for (const Slot& s : slots)
      os << "# slot " << s.name << " A=" << s.config.to_string() << ' ' << to_string(s.rule) << ": "
         << to_sexpr(s.itp) << '\n';
  }
  for (std::size_t k = 0; k < obligations.size(); ++k) {
    const Obligation& o = obligations[k];
    if (verbose) os << "# obligation " << k + 1 << ": " << o.description << '\n';
    os << "OBLIGATION " << k + 1 << (o.holds ? " HOLDS" : " FAILS");
    if (!o.holds) os << ' ' << o.counter_model.to_string();
    os << '\n';
  }
  return os.str();
}

namespace {

struct SlotDef {
  std::string name;
  Configuration config;
  LabelingRule rule;
};

// lhs = slot interpolants ∧ partitions; rhs = a slot interpolant or ⊥.
struct ObligationDef {
  std::vector<std::size_t> lhs_slots;
  std::vector<std::size_t> lhs_parts;
  std::optional<std::size_t> rhs_slot;
};

// Serial loop for jobs ≤ 1, OpenMP otherwise. The first exception thrown by
// any iteration is rethrown after the loop.
template <class F> void for_each_index(std::size_t n, int jobs, F&& f) {
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (long i = 0; i < static_cast<long>(n); ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(itp_collective_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

Configuration range(std::size_t first, std::size_t last) {
  Configuration c;
  for (std::size_t k = first; k <= last; ++k) c.a_parts.insert(k);
  return c;
}

std::string slot_ref(const std::vector<SlotDef>& slots, std::size_t i) { return "I[" + slots[i].name + "]"; }

CollectiveReport run_check(CollectiveKind kind, ExprManager& mgr, const PartitionedCnf& cnf,
                           const std::vector<SlotDef>& slot_defs, const std::vector<ObligationDef>& defs,
                           const CheckOptions& options) {
  std::optional<ResolutionProof> solved;
  const ResolutionProof* proof = options.proof;
  if (proof) {
    if (auto err = validate_proof(*proof, cnf)) throw *err;
  } else {
    SolverOptions so;
    so.seed = options.seed;
    so.conflict_limit = options.conflict_limit;
    SolveResult r = solve(cnf, so);
    if (r.is_sat()) throw NotUnsat(r.model().to_string());
    solved = r.proof();
    proof = &*solved;
  }

  CollectiveReport report{kind, {}, {}};
  report.slots.resize(slot_defs.size());
  for_each_index(slot_defs.size(), options.jobs, [&](std::size_t i) {
    const SlotDef& d = slot_defs[i];
    report.slots[i] = Slot{d.name, d.config, d.rule,
                           interpolate(mgr, *proof, cnf, LabelingSpec{d.rule, d.config})};
  });

  report.obligations.resize(defs.size());
  for (std::size_t k = 0; k < defs.size(); ++k) {
    Obligation& o = report.obligations[k];
    std::string lhs;
    for (std::size_t s : defs[k].lhs_slots) {
      o.lhs.push_back(report.slots[s].itp);
      lhs += (lhs.empty() ? "" : " & ") + slot_ref(slot_defs, s);
    }
    for (std::size_t p : defs[k].lhs_parts) {
      o.lhs.push_back(mgr.cnf(cnf.partition(p)));
      lhs += (lhs.empty() ? "" : " & ") + ("phi" + std::to_string(p));
    }
    if (lhs.empty()) lhs = "true";
    o.rhs = defs[k].rhs_slot ? report.slots[*defs[k].rhs_slot].itp : mgr.bottom();
    o.description = lhs + " => " + (defs[k].rhs_slot ? slot_ref(slot_defs, *defs[k].rhs_slot) : "false");
  }

  SolverOptions so;
  so.seed = options.seed;
  so.conflict_limit = options.conflict_limit;
  for_each_index(defs.size(), options.jobs, [&](std::size_t k) {
    Obligation& o = report.obligations[k];
    ImplicationResult r = check_implication(mgr.land(o.lhs), o.rhs, cnf.num_vars(), so);
    o.holds = r.holds;
    o.counter_model = std::move(r.counter_model);
  });
  return report;
}

void require_arity(const char* what, std::size_t got, std::size_t want) {
  if (got != want)
    throw UsageError(std::string(what) + " needs a family of " + std::to_string(want) + " labelings, got " +
                     std::to_string(got));
}

} // namespace

CollectiveReport check_pi(ExprManager& mgr, const PartitionedCnf& cnf, const std::vector<LabelingRule>& family,
                          const CheckOptions& options) {
  const std::size_t n = cnf.num_partitions();
  require_arity("pi", family.size(), n + 1);
  std::vector<SlotDef> slots;
  for (std::size_t i = 0; i <= n; ++i) slots.push_back({"S" + std::to_string(i), range(1, i), family[i]});
  std::vector<ObligationDef> defs;
  for (std::size_t i = 0; i < n; ++i) {
    ObligationDef d{{i}, {i + 1}, i + 1};
    if (i + 1 == n) d.rhs_slot.reset(); // I_n = ⊥
    defs.push_back(d);
  }
  return run_check(CollectiveKind::PI, mgr, cnf, slots, defs, options);
}

CollectiveReport check_sa(ExprManager& mgr, const PartitionedCnf& cnf, const std::vector<LabelingRule>& family,
                          const CheckOptions& options) {
  const std::size_t n = cnf.num_partitions();
  if (family.size() != n && family.size() != n + 1)
    throw UsageError("sa needs a family of " + std::to_string(n) + " (or " + std::to_string(n + 1) +
                     ") labelings, got " + std::to_string(family.size()));
  std::vector<SlotDef> slots;
  ObligationDef d;
  for (std::size_t i = 1; i <= n; ++i) {
    slots.push_back({"S" + std::to_string(i), Configuration{{i}}, family[i - 1]});
    d.lhs_slots.push_back(i - 1);
  }
  return run_check(CollectiveKind::SA, mgr, cnf, slots, {d}, options);
}

CollectiveReport check_gsa(ExprManager& mgr, const PartitionedCnf& cnf, const std::vector<LabelingRule>& family,
                           const CheckOptions& options) {
  const std::size_t parts = cnf.num_partitions();
  if (parts < 2) throw UsageError("gsa needs at least 2 partitions");
  const std::size_t n = parts - 1;
  require_arity("gsa", family.size(), n + 1);
  std::vector<SlotDef> slots;
  ObligationDef d;
  for (std::size_t i = 1; i <= n; ++i) {
    slots.push_back({"S" + std::to_string(i), Configuration{{i}}, family[i - 1]});
    d.lhs_slots.push_back(i - 1);
  }
  slots.push_back({"S" + std::to_string(n + 1), range(1, n), family[n]});
  d.rhs_slot = n;
  return run_check(CollectiveKind::GSA, mgr, cnf, slots, {d}, options);
}

CollectiveReport check_bgsa(ExprManager& mgr, const PartitionedCnf& cnf, const std::vector<LabelingRule>& family,
                            const CheckOptions& options) {
  if (cnf.num_partitions() != 3)
    throw UsageError("bgsa needs exactly 3 partitions, got " + std::to_string(cnf.num_partitions()));
  CollectiveReport r = check_gsa(mgr, cnf, family, options);
  r.kind = CollectiveKind::BGSA;
  return r;
}

CollectiveReport check_sti(ExprManager& mgr, const PartitionedCnf& cnf, const std::vector<LabelingRule>& family,
                           const CheckOptions& options) {
  const std::size_t n = cnf.num_partitions();
  require_arity("sti", family.size(), 2 * n + 1);
  std::vector<SlotDef> slots;
  for (std::size_t i = 0; i <= n; ++i) slots.push_back({"S" + std::to_string(i), range(1, i), family[i]});
  for (std::size_t i = 1; i <= n; ++i)
    slots.push_back({"T" + std::to_string(i), Configuration{{i}}, family[n + i]});
  std::vector<ObligationDef> defs;
  for (std::size_t i = 0; i < n; ++i) {
    ObligationDef d{{i, n + i + 1}, {}, i + 1};
    if (i + 1 == n) d.rhs_slot.reset();
    defs.push_back(d);
  }
  return run_check(CollectiveKind::STI, mgr, cnf, slots, defs, options);
}

CollectiveReport check_tree(ExprManager& mgr, const PartitionedCnf& cnf, const Tree& tree,
                            const std::vector<LabelingRule>& family, const CheckOptions& options) {
  require_arity("tree", family.size(), tree.size());
  std::set<std::size_t> decorated;
  for (const TreeNode& t : tree.nodes())
    if (t.partition) {
      if (*t.partition < 1 || *t.partition > cnf.num_partitions())
        throw UsageError("tree node " + std::to_string(t.id) + " refers to missing partition " +
                         std::to_string(*t.partition));
      decorated.insert(*t.partition);
    }
  if (decorated.size() != cnf.num_partitions())
    throw UsageError("tree decorates " + std::to_string(decorated.size()) + " of " +
                     std::to_string(cnf.num_partitions()) + " partitions");

  std::vector<SlotDef> slots;
  std::vector<ObligationDef> defs;
  for (std::size_t s = 0; s < tree.size(); ++s) {
    const TreeNode& t = tree.nodes()[s];
    slots.push_back({"N" + std::to_string(t.id), Configuration{tree.subtree_partitions(t.id)}, family[s]});
    ObligationDef d;
    for (unsigned c : tree.children(t.id)) d.lhs_slots.push_back(tree.slot_of(c));
    if (t.partition) d.lhs_parts.push_back(*t.partition);
    if (t.id != tree.root()) d.rhs_slot = s;
    defs.push_back(d);
  }
  return run_check(CollectiveKind::Tree, mgr, cnf, slots, defs, options);
}

CollectiveReport check_symmetry(ExprManager& mgr, const PartitionedCnf& cnf, const LabelingRule& rule,
                                const CheckOptions& options) {
  if (cnf.num_partitions() != 2)
    throw UsageError("symmetry needs exactly 2 partitions, got " + std::to_string(cnf.num_partitions()));
  std::vector<SlotDef> slots{{"S1", Configuration{{1}}, rule}, {"S2", Configuration{{2}}, rule}};
  // Itp(φ1|φ2) ⟺ ¬Itp(φ2|φ1) splits into Itp(φ1|φ2) ∧ Itp(φ2|φ1) ⟹ ⊥ and
  // ⊤ ⟹ Itp(φ1|φ2) ∨ Itp(φ2|φ1). The second needs a disjunction, so it is
  // checked here directly.
  CollectiveReport report = run_check(CollectiveKind::Symmetry, mgr, cnf, slots, {{{0, 1}, {}, std::nullopt}}, options);
  Obligation o;
  o.rhs = mgr.lor(report.slots[0].itp, report.slots[1].itp);
  o.description = "true => I[S1] | I[S2]";
  SolverOptions so;
  so.seed = options.seed;
  so.conflict_limit = options.conflict_limit;
  ImplicationResult r = check_implication(mgr.top(), o.rhs, cnf.num_vars(), so);
  o.holds = r.holds;
  o.counter_model = std::move(r.counter_model);
  report.obligations.push_back(std::move(o));
  return report;
}

} // namespace itp
