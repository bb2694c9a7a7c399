#include "itp/tseitin.hpp"

#include <unordered_map>

namespace itp {

TseitinResult tseitin_encode(Expr root, unsigned fresh_base) {
  TseitinResult out{{}, Lit(), fresh_base};
  std::unordered_map<const ExprNode*, Lit> lit_of;

  auto fresh = [&] { return Lit(Var(out.next_fresh++), true); };

  std::vector<std::pair<Expr, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [e, expanded] = stack.back();
    stack.pop_back();
    if (lit_of.count(e.node())) continue;
    switch (e.kind()) {
    case ExprKind::Lit: lit_of.emplace(e.node(), e.lit()); continue;
    case ExprKind::True:
    case ExprKind::False: {
      Lit g = fresh();
      out.clauses.push_back(Clause{e.is_true() ? g : ~g});
      lit_of.emplace(e.node(), g);
      continue;
    }
    default: break;
    }
    if (!expanded) {
      stack.emplace_back(e, true);
      for (auto it = e.children().rbegin(); it != e.children().rend(); ++it)
        if (!lit_of.count(it->node())) stack.emplace_back(*it, false);
      continue;
    }

    Lit g = fresh();
    std::vector<Lit> kids;
    kids.reserve(e.children().size());
    for (Expr c : e.children()) kids.push_back(lit_of.at(c.node()));

    // And: g → k_i for all i, (k_1 ∧ … ∧ k_n) → g. Or is the dual.
    const bool is_and = e.kind() == ExprKind::And;
    std::vector<Lit> big{is_and ? g : ~g};
    for (Lit k : kids) {
      Lit kk = is_and ? k : ~k;
      out.clauses.push_back(Clause{is_and ? ~g : g, kk});
      big.push_back(~kk);
    }
    // A repeated child (e ∧ e) is harmless; two opposite children (x ∧ ¬x)
    // would make the long clause tautological, in which case it is implied.
    try {
      out.clauses.emplace_back(std::move(big));
    } catch (const TautologyError&) {
    }
    lit_of.emplace(e.node(), g);
  }
  out.output = lit_of.at(root.node());
  return out;
}

} // namespace itp
