#include "itp/sat.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <stdexcept>

#include "itp/tseitin.hpp"

namespace itp {

SolveResult SolveResult::sat(Assignment model, SolverStats stats) {
  SolveResult r;
  r.sat_ = true;
  r.model_ = std::move(model);
  r.stats_ = stats;
  return r;
}

SolveResult SolveResult::unsat(std::optional<ResolutionProof> proof, SolverStats stats) {
  SolveResult r;
  r.sat_ = false;
  r.proof_ = std::move(proof);
  r.stats_ = stats;
  return r;
}

const Assignment& SolveResult::model() const {
  if (!sat_) throw std::logic_error("model() on an Unsat result");
  return model_;
}

const ResolutionProof& SolveResult::proof() const {
  if (sat_ || !proof_) throw std::logic_error("proof() without a logged refutation");
  return *proof_;
}

namespace {

// Literal codes: 2*v for v, 2*v+1 for ¬v.
using L = std::uint32_t;
inline L code(Lit l) { return 2 * l.var().index() + (l.positive() ? 0 : 1); }
inline L negc(L x) { return x ^ 1u; }
inline unsigned varc(L x) { return x >> 1; }
inline Lit decode(L x) { return Lit(Var(varc(x)), (x & 1u) == 0); }

constexpr std::uint32_t kNone = UINT32_MAX;

struct StoredClause {
  std::vector<L> lits;
  std::uint32_t log_id;
};

struct LogEntry {
  Clause clause;
  std::size_t partition; // leaves only
  std::vector<std::uint32_t> chain; // empty for leaves
};

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    seq++;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    seq--;
    x = x % size;
  }
  return std::pow(y, seq);
}

class Solver {
public:
  Solver(const PartitionedCnf& cnf, const SolverOptions& opts)
      : n_(cnf.num_vars()), opts_(opts), value_(2 * (n_ + 1), 0), level_(n_ + 1, 0),
        reason_(n_ + 1, kNone), trail_pos_(n_ + 1, 0), activity_(n_ + 1, 0.0),
        phase_(n_ + 1, false), seen_(n_ + 1, 0), watches_(2 * (n_ + 1)) {
    if (opts_.seed != 0) {
      std::mt19937_64 rng(opts_.seed);
      std::uniform_real_distribution<double> act(0.0, 1e-5);
      for (unsigned v = 1; v <= n_; ++v) {
        activity_[v] = act(rng);
        phase_[v] = (rng() & 1u) != 0;
      }
    }
    for (std::size_t k = 1; k <= cnf.num_partitions(); ++k)
      for (const Clause& c : cnf.partition(k)) inputs_.push_back({&c, k});
  }

  SolveResult run() {
    // An empty input clause is already a refutation.
    for (auto [c, k] : inputs_)
      if (c->empty()) {
        std::uint32_t id = log_leaf(*c, k);
        return finish_unsat(id);
      }

    std::vector<std::uint32_t> units;
    for (auto [c, k] : inputs_) {
      std::uint32_t ci = add_clause(*c, log_leaf(*c, k));
      if (c->size() == 1)
        units.push_back(ci);
      else
        attach(ci);
    }
    for (std::uint32_t ci : units) {
      L u = clauses_[ci].lits[0];
      if (value(u) == 1) continue;
      if (value(u) == -1) return finish_unsat(derive_bottom(ci));
      assign(u, ci);
    }
    if (std::uint32_t confl = propagate(); confl != kNone) return finish_unsat(derive_bottom(confl));

    for (unsigned v = 1; v <= n_; ++v) heap_.push({activity_[v], v});

    int restart_no = 0;
    for (;;) {
      const std::uint64_t budget = static_cast<std::uint64_t>(luby(2.0, restart_no) * 100.0);
      std::uint64_t conflicts_here = 0;
      for (;;) {
        std::uint32_t confl = propagate();
        if (confl != kNone) {
          ++stats_.conflicts;
          ++conflicts_here;
          if (opts_.conflict_limit && stats_.conflicts > opts_.conflict_limit)
            throw ResourceLimit("conflict budget of " + std::to_string(opts_.conflict_limit) +
                                " exceeded");
          if (decision_level() == 0) return finish_unsat(derive_bottom(confl));
          auto [learnt, chain, bt] = analyze(confl);
          backtrack(bt);
          std::uint32_t id = opts_.log_proof ? log_derived(learnt, std::move(chain)) : kNone;
          std::uint32_t ci = add_clause_codes(std::move(learnt), id);
          if (clauses_[ci].lits.size() > 1) attach(ci);
          assign(clauses_[ci].lits[0], ci);
          decay();
          continue;
        }
        if (conflicts_here >= budget) {
          ++stats_.restarts;
          ++restart_no;
          backtrack(0);
          break;
        }
        unsigned v = pick_branch();
        if (v == 0) {
          Assignment model(n_);
          for (unsigned u = 1; u <= n_; ++u) model.set(Var(u), value(2 * u) == 1);
          return SolveResult::sat(std::move(model), stats_);
        }
        ++stats_.decisions;
        trail_lim_.push_back(static_cast<std::uint32_t>(trail_.size()));
        assign(phase_[v] ? 2 * v : 2 * v + 1, kNone);
      }
    }
  }

private:
  int value(L x) const { return value_[x]; }
  std::uint32_t decision_level() const { return static_cast<std::uint32_t>(trail_lim_.size()); }

  std::uint32_t log_leaf(const Clause& c, std::size_t k) {
    if (!opts_.log_proof) return kNone;
    log_.push_back({c, k, {}});
    return static_cast<std::uint32_t>(log_.size() - 1);
  }

  std::uint32_t log_derived(const std::vector<L>& lits, std::vector<std::uint32_t> chain) {
    std::vector<Lit> ls;
    ls.reserve(lits.size());
    for (L x : lits) ls.push_back(decode(x));
    log_.push_back({Clause(std::move(ls)), 0, std::move(chain)});
    return static_cast<std::uint32_t>(log_.size() - 1);
  }

  std::uint32_t add_clause(const Clause& c, std::uint32_t log_id) {
    std::vector<L> lits;
    lits.reserve(c.size());
    for (Lit l : c) lits.push_back(code(l));
    return add_clause_codes(std::move(lits), log_id);
  }

  std::uint32_t add_clause_codes(std::vector<L> lits, std::uint32_t log_id) {
    clauses_.push_back({std::move(lits), log_id});
    return static_cast<std::uint32_t>(clauses_.size() - 1);
  }

  void attach(std::uint32_t ci) {
    const auto& c = clauses_[ci].lits;
    watches_[negc(c[0])].push_back(ci);
    watches_[negc(c[1])].push_back(ci);
  }

  void assign(L x, std::uint32_t reason) {
    unsigned v = varc(x);
    value_[x] = 1;
    value_[negc(x)] = -1;
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_pos_[v] = static_cast<std::uint32_t>(trail_.size());
    trail_.push_back(x);
  }

  // Returns the index of a falsified clause, or kNone.
  std::uint32_t propagate() {
    while (qhead_ < trail_.size()) {
      L p = trail_[qhead_++]; // p became true; clauses watching ¬p need attention
      ++stats_.propagations;
      auto& ws = watches_[p];
      std::size_t i = 0, j = 0;
      const L false_lit = negc(p);
      while (i < ws.size()) {
        std::uint32_t ci = ws[i++];
        auto& c = clauses_[ci].lits;
        if (c[0] == false_lit) std::swap(c[0], c[1]);
        if (value(c[0]) == 1) {
          ws[j++] = ci;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k)
          if (value(c[k]) != -1) {
            std::swap(c[1], c[k]);
            watches_[negc(c[1])].push_back(ci);
            moved = true;
            break;
          }
        if (moved) continue;
        ws[j++] = ci;
        if (value(c[0]) == -1) {
          while (i < ws.size()) ws[j++] = ws[i++];
          ws.resize(j);
          qhead_ = trail_.size();
          return ci;
        }
        assign(c[0], ci);
      }
      ws.resize(j);
    }
    return kNone;
  }

  struct Analysis {
    std::vector<L> learnt; // asserting literal first
    std::vector<std::uint32_t> chain;
    std::uint32_t backtrack_level;
  };

  // First-UIP learning. Level-0 literals are resolved away with their reasons
  // at the end of the chain so the logged clause equals the learned one.
  Analysis analyze(std::uint32_t confl) {
    Analysis out;
    out.learnt.push_back(0);
    std::vector<unsigned> level0;
    int path = 0;
    L p = 0;
    bool have_p = false;
    std::size_t idx = trail_.size();
    std::vector<unsigned> touched;
    for (;;) {
      const auto& c = clauses_[confl];
      if (opts_.log_proof) out.chain.push_back(c.log_id);
      bump_clause_vars(c.lits);
      for (L q : c.lits) {
        if (have_p && q == p) continue;
        unsigned v = varc(q);
        if (seen_[v]) continue;
        seen_[v] = 1;
        touched.push_back(v);
        if (level_[v] == 0) {
          level0.push_back(v);
        } else if (level_[v] == decision_level()) {
          ++path;
        } else {
          out.learnt.push_back(q);
        }
      }
      do {
        --idx;
      } while (!seen_[varc(trail_[idx])] || level_[varc(trail_[idx])] != decision_level());
      p = trail_[idx];
      have_p = true;
      confl = reason_[varc(p)];
      --path;
      if (path == 0) break;
    }
    out.learnt[0] = negc(p);

    out.backtrack_level = 0;
    if (out.learnt.size() > 1) {
      std::size_t best = 1;
      for (std::size_t k = 2; k < out.learnt.size(); ++k)
        if (level_[varc(out.learnt[k])] > level_[varc(out.learnt[best])]) best = k;
      std::swap(out.learnt[1], out.learnt[best]);
      out.backtrack_level = level_[varc(out.learnt[1])];
    }

    if (opts_.log_proof) resolve_level0(level0, out.chain, touched);
    for (unsigned v : touched) seen_[v] = 0;
    return out;
  }

  // Appends reasons of the level-0 variables in `pending` (and of the level-0
  // variables those reasons bring in) in descending trail order.
  void resolve_level0(std::vector<unsigned>& pending, std::vector<std::uint32_t>& chain,
                      std::vector<unsigned>& touched) {
    if (pending.empty()) return;
    std::vector<std::uint32_t> positions;
    for (unsigned v : pending) positions.push_back(trail_pos_[v]);
    std::make_heap(positions.begin(), positions.end());
    while (!positions.empty()) {
      std::pop_heap(positions.begin(), positions.end());
      unsigned v = varc(trail_[positions.back()]);
      positions.pop_back();
      const auto& r = clauses_[reason_[v]];
      chain.push_back(r.log_id);
      for (L q : r.lits) {
        unsigned u = varc(q);
        if (u == v || seen_[u]) continue;
        seen_[u] = 1;
        touched.push_back(u);
        positions.push_back(trail_pos_[u]);
        std::push_heap(positions.begin(), positions.end());
      }
    }
  }

  // Refutation from a clause falsified at level 0.
  std::uint32_t derive_bottom(std::uint32_t confl) {
    if (!opts_.log_proof) return kNone;
    std::vector<std::uint32_t> chain{clauses_[confl].log_id};
    std::vector<unsigned> pending, touched;
    for (L q : clauses_[confl].lits) {
      unsigned v = varc(q);
      if (seen_[v]) continue;
      seen_[v] = 1;
      touched.push_back(v);
      pending.push_back(v);
    }
    resolve_level0(pending, chain, touched);
    for (unsigned v : touched) seen_[v] = 0;
    log_.push_back({Clause(), 0, std::move(chain)});
    return static_cast<std::uint32_t>(log_.size() - 1);
  }

  void backtrack(std::uint32_t level) {
    if (decision_level() <= level) return;
    for (std::size_t i = trail_.size(); i-- > trail_lim_[level];) {
      unsigned v = varc(trail_[i]);
      value_[trail_[i]] = 0;
      value_[negc(trail_[i])] = 0;
      reason_[v] = kNone;
      phase_[v] = (trail_[i] & 1u) == 0;
      heap_.push({activity_[v], v});
    }
    trail_.resize(trail_lim_[level]);
    trail_lim_.resize(level);
    qhead_ = trail_.size();
  }

  unsigned pick_branch() {
    while (!heap_.empty()) {
      auto [act, v] = heap_.top();
      heap_.pop();
      if (value(2 * v) != 0 || act != activity_[v]) continue;
      return v;
    }
    return 0;
  }

  void bump_clause_vars(const std::vector<L>& lits) {
    for (L q : lits) {
      unsigned v = varc(q);
      activity_[v] += var_inc_;
      if (activity_[v] > 1e100) rescale();
      else if (value(2 * v) == 0) heap_.push({activity_[v], v});
    }
  }

  void rescale() {
    for (unsigned v = 1; v <= n_; ++v) activity_[v] *= 1e-100;
    var_inc_ *= 1e-100;
    heap_ = {};
    for (unsigned v = 1; v <= n_; ++v)
      if (value(2 * v) == 0) heap_.push({activity_[v], v});
  }

  void decay() { var_inc_ /= 0.95; }

  SolveResult finish_unsat(std::uint32_t bottom) {
    if (!opts_.log_proof) return SolveResult::unsat(std::nullopt, stats_);
    return SolveResult::unsat(build_proof(bottom), stats_);
  }

  ResolutionProof build_proof(std::uint32_t bottom) const {
    std::vector<char> reach(log_.size(), 0);
    reach[bottom] = 1;
    for (std::size_t i = bottom + 1; i-- > 0;)
      if (reach[i])
        for (std::uint32_t a : log_[i].chain) reach[a] = 1;
    ProofBuilder b;
    std::vector<NodeId> node_of(log_.size(), 0);
    for (std::size_t i = 0; i <= bottom; ++i) {
      if (!reach[i]) continue;
      const LogEntry& e = log_[i];
      if (e.chain.empty()) {
        node_of[i] = b.add_leaf(e.clause, e.partition);
        continue;
      }
      NodeId acc = node_of[e.chain[0]];
      for (std::size_t k = 1; k < e.chain.size(); ++k) acc = b.resolve(acc, node_of[e.chain[k]]);
      if (b.node(acc).clause != e.clause)
        throw std::logic_error("proof reconstruction: chain derives " + b.node(acc).clause.to_string() +
                               ", logged " + e.clause.to_string());
      node_of[i] = acc;
    }
    return b.build(node_of[bottom]);
  }

  struct HeapEntry {
    double act;
    unsigned var;
    bool operator<(const HeapEntry& o) const {
      return act < o.act || (act == o.act && var > o.var);
    }
  };

  unsigned n_;
  SolverOptions opts_;
  std::vector<std::pair<const Clause*, std::size_t>> inputs_;
  std::vector<StoredClause> clauses_;
  std::vector<LogEntry> log_;
  std::vector<signed char> value_;
  std::vector<std::uint32_t> level_;
  std::vector<std::uint32_t> reason_;
  std::vector<std::uint32_t> trail_pos_;
  std::vector<double> activity_;
  std::vector<bool> phase_;
  std::vector<char> seen_;
  std::vector<std::vector<std::uint32_t>> watches_;
  std::vector<L> trail_;
  std::vector<std::uint32_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::priority_queue<HeapEntry> heap_;
  double var_inc_ = 1.0;
  SolverStats stats_;
};

unsigned max_var(Expr e) {
  auto vs = vars_of(e);
  return vs.empty() ? 0 : vs.back().index();
}

} // namespace

SolveResult solve(const PartitionedCnf& cnf, const SolverOptions& options) {
  return Solver(cnf, options).run();
}

ImplicationResult check_implication(Expr lhs, Expr rhs, unsigned num_vars, const SolverOptions& options) {
  unsigned base = std::max({num_vars, max_var(lhs), max_var(rhs)}) + 1;
  TseitinResult l = tseitin_encode(lhs, base);
  TseitinResult r = tseitin_encode(rhs, l.next_fresh);
  std::vector<Clause> clauses = std::move(l.clauses);
  clauses.insert(clauses.end(), r.clauses.begin(), r.clauses.end());
  clauses.push_back(Clause{l.output});
  clauses.push_back(Clause{~r.output});
  // lhs = x and rhs = x leave the contradictory units (x) and (¬x): fine.
  SolverOptions opts = options;
  opts.log_proof = false;
  SolveResult res = solve(PartitionedCnf(r.next_fresh - 1, {std::move(clauses)}), opts);
  if (!res.is_sat()) return {};
  return {false, res.model().restricted(num_vars)};
}

ImplicationResult check_equivalence(Expr a, Expr b, unsigned num_vars, const SolverOptions& options) {
  ImplicationResult r = check_implication(a, b, num_vars, options);
  if (!r.holds) return r;
  return check_implication(b, a, num_vars, options);
}

} // namespace itp
