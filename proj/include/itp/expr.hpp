#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "itp/formula.hpp"

namespace itp {

enum class ExprKind : std::uint8_t { True, False, Lit, And, Or };

struct ExprNode;

// Handle to a hash-consed node owned by an ExprManager. Two handles compare
// equal iff they denote the same node, which (by hash-consing) means the same
// structure. Negation only appears on literals: constructors keep NNF.
class Expr {
public:
  Expr() = default;

  ExprKind kind() const;
  bool is_true() const { return kind() == ExprKind::True; }
  bool is_false() const { return kind() == ExprKind::False; }
  // Only meaningful for ExprKind::Lit.
  Lit lit() const;
  std::span<const Expr> children() const;
  // Creation index inside the owning manager.
  std::uint32_t id() const;
  bool null() const { return node_ == nullptr; }

  bool operator==(const Expr&) const = default;

  const ExprNode* node() const { return node_; }

private:
  friend class ExprManager;
  explicit Expr(const ExprNode* n) : node_(n) {}
  const ExprNode* node_ = nullptr;
};

struct ExprNode {
  ExprKind kind;
  Lit lit;
  std::vector<Expr> children;
  std::uint32_t id;
};

inline ExprKind Expr::kind() const { return node_->kind; }
inline Lit Expr::lit() const { return node_->lit; }
inline std::span<const Expr> Expr::children() const { return node_->children; }
inline std::uint32_t Expr::id() const { return node_->id; }

struct ExprHash {
  std::size_t operator()(Expr e) const noexcept { return std::hash<const void*>{}(e.node()); }
};

// Owner of Boolean-expression DAG nodes.
//
// Construction is thread-safe: the hash-cons table and the negation cache are
// guarded by one mutex. Nodes are immutable once published, so reading through
// an Expr handle needs no lock. And/Or fold constants (x∧⊤ = x, x∧⊥ = ⊥, and
// duals); no other simplification is applied, so e∧e is a fresh node.
class ExprManager {
public:
  ExprManager();
  ExprManager(const ExprManager&) = delete;
  ExprManager& operator=(const ExprManager&) = delete;

  Expr top() const { return top_; }
  Expr bottom() const { return bottom_; }
  Expr constant(bool value) const { return value ? top_ : bottom_; }
  Expr lit(Lit l);
  Expr var(unsigned v) { return lit(pos(v)); }

  Expr land(std::span<const Expr> children);
  Expr lor(std::span<const Expr> children);
  Expr land(std::initializer_list<Expr> children) { return land(std::span(children.begin(), children.size())); }
  Expr lor(std::initializer_list<Expr> children) { return lor(std::span(children.begin(), children.size())); }
  Expr land(Expr a, Expr b) { return land({a, b}); }
  Expr lor(Expr a, Expr b) { return lor({a, b}); }

  // NNF negation (De Morgan pushed to the literals), memoized per node.
  Expr negate(Expr e);
  Expr implies(Expr a, Expr b) { return lor(negate(a), b); }

  // Disjunction of the clause's literals (⊥ for the empty clause).
  Expr clause(const Clause& c);
  // Conjunction of clauses (⊤ for none).
  Expr cnf(std::span<const Clause> clauses);

  std::size_t size() const;

private:
  // Lookup key for hash-consing; the table stores the nodes themselves.
  struct KeyView {
    ExprKind kind;
    Lit lit;
    std::span<const Expr> children;
  };
  struct NodeHash {
    using is_transparent = void;
    std::size_t operator()(const KeyView& k) const noexcept;
    std::size_t operator()(const ExprNode* n) const noexcept { return (*this)(KeyView{n->kind, n->lit, n->children}); }
  };
  struct NodeEq {
    using is_transparent = void;
    static bool same(const KeyView& a, const KeyView& b) {
      return a.kind == b.kind && a.lit == b.lit && std::ranges::equal(a.children, b.children);
    }
    static KeyView view(const ExprNode* n) { return {n->kind, n->lit, n->children}; }
    bool operator()(const ExprNode* a, const ExprNode* b) const { return a == b; }
    bool operator()(const KeyView& a, const ExprNode* b) const { return same(a, view(b)); }
    bool operator()(const ExprNode* a, const KeyView& b) const { return same(view(a), b); }
  };

  Expr make(ExprKind kind, Lit lit, std::vector<Expr> children);
  Expr junction(ExprKind kind, std::span<const Expr> children);

  mutable std::mutex mutex_;
  std::deque<ExprNode> nodes_;
  std::unordered_set<const ExprNode*, NodeHash, NodeEq> table_;
  std::unordered_map<const ExprNode*, const ExprNode*> negation_;
  std::vector<const ExprNode*> lits_; // 2*var + positive
  Expr top_, bottom_;
};

// Number of distinct nodes reachable from `e`.
std::size_t node_count(Expr e);
// Sorted, duplicate-free variables of `e`.
std::vector<Var> vars_of(Expr e);
// Throws UnassignedVar if a variable of `e` has no value.
bool eval(Expr e, const Assignment& assignment);

// s-expression form: true, false, (var k), (not (var k)), (and …), (or …).
std::string to_sexpr(Expr e);
Expr parse_sexpr(ExprManager& mgr, std::string_view text);

} // namespace itp
