#include "itp/interpolate.hpp"

namespace itp {

PartialInterpolants partial_interpolants(ExprManager& mgr, const ResolutionProof& proof,
                                         const PartitionedCnf& cnf, const LabelingSpec& spec,
                                         InterpolationStats* stats) {
  const ClassTable classes(cnf, spec.config);
  PartialInterpolants out;
  out.itp.resize(proof.size());
  out.labels.resize(proof.size());
  InterpolationStats local;
  std::vector<Expr> parts;

  for (NodeId id = 0; id < proof.size(); ++id) {
    const ProofNode& n = proof.node(id);
    ++local.node_visits;
    local.literal_work += n.clause.size();
    auto& labels = out.labels[id];
    labels.reserve(n.clause.size());

    if (n.leaf) {
      for (Lit l : n.clause) {
        switch (classes.at(l.var())) {
        case VarClass::A: labels.push_back(Label::a); break;
        case VarClass::B: labels.push_back(Label::b); break;
        case VarClass::AB: {
          auto lab = rule_label(spec.rule, id, l.var());
          if (!lab)
            throw SpecIncomplete("no label for AB variable " + std::to_string(l.var().index()) +
                                 " in leaf " + std::to_string(id));
          labels.push_back(*lab);
        }
        }
      }
      parts.clear();
      if (spec.config.in_a(n.partition)) {
        for (std::size_t k = 0; k < n.clause.size(); ++k)
          if (labels[k] == Label::b) parts.push_back(mgr.lit(n.clause[k]));
        out.itp[id] = mgr.lor(parts);
      } else {
        for (std::size_t k = 0; k < n.clause.size(); ++k)
          if (labels[k] == Label::a) parts.push_back(mgr.lit(~n.clause[k]));
        out.itp[id] = mgr.land(parts);
      }
      continue;
    }

    // Merge the antecedents' sorted literal lists, joining labels of shared
    // literals and picking out the pivot.
    const ProofNode& p = proof.node(n.pos);
    const ProofNode& q = proof.node(n.neg);
    const auto& lp = out.labels[n.pos];
    const auto& lq = out.labels[n.neg];
    local.literal_work += p.clause.size() + q.clause.size();
    Label pivot_pos = Label::b, pivot_neg = Label::b;
    std::size_t i = 0, j = 0;
    while (i < p.clause.size() || j < q.clause.size()) {
      const bool take_i = j >= q.clause.size() ||
                          (i < p.clause.size() && p.clause[i].var() <= q.clause[j].var());
      const bool take_j = i >= p.clause.size() ||
                          (j < q.clause.size() && q.clause[j].var() <= p.clause[i].var());
      Var v = take_i ? p.clause[i].var() : q.clause[j].var();
      if (v == n.pivot) {
        pivot_pos = lp[i];
        pivot_neg = lq[j];
      } else if (take_i && take_j) {
        labels.push_back(join(lp[i], lq[j]));
      } else {
        labels.push_back(take_i ? lp[i] : lq[j]);
      }
      if (take_i) ++i;
      if (take_j) ++j;
    }

    Expr ip = out.itp[n.pos], in = out.itp[n.neg];
    switch (join(pivot_pos, pivot_neg)) {
    case Label::a: out.itp[id] = mgr.lor(ip, in); break;
    case Label::b: out.itp[id] = mgr.land(ip, in); break;
    case Label::ab:
      out.itp[id] = mgr.land(mgr.lor(ip, mgr.lit(Lit(n.pivot, true))), mgr.lor(in, mgr.lit(Lit(n.pivot, false))));
      break;
    }
  }
  if (stats) *stats = local;
  return out;
}

Expr interpolate(ExprManager& mgr, const ResolutionProof& proof, const PartitionedCnf& cnf,
                 const LabelingSpec& spec, InterpolationStats* stats) {
  return partial_interpolants(mgr, proof, cnf, spec, stats).itp[proof.root()];
}

} // namespace itp
