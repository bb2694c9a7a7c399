#include "itp/expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_set>

namespace itp {

std::size_t ExprManager::NodeHash::operator()(const KeyView& k) const noexcept {
  std::size_t h = static_cast<std::size_t>(k.kind) * 0x9e3779b97f4a7c15ull;
  h ^= static_cast<std::size_t>(k.lit.to_dimacs()) + 0x9e3779b9 + (h << 6) + (h >> 2);
  for (Expr c : k.children) h ^= std::hash<const void*>{}(c.node()) + 0x9e3779b9 + (h << 6) + (h >> 2);
  return h;
}

ExprManager::ExprManager() {
  top_ = make(ExprKind::True, Lit(), {});
  bottom_ = make(ExprKind::False, Lit(), {});
}

Expr ExprManager::make(ExprKind kind, Lit lit, std::vector<Expr> children) {
  std::lock_guard lock(mutex_);
  auto it = table_.find(KeyView{kind, lit, children});
  if (it != table_.end()) return Expr(*it);
  nodes_.push_back(ExprNode{kind, lit, std::move(children), static_cast<std::uint32_t>(nodes_.size())});
  const ExprNode* raw = &nodes_.back();
  table_.insert(raw);
  return Expr(raw);
}

Expr ExprManager::lit(Lit l) {
  const std::size_t code = 2 * std::size_t{l.var().index()} + (l.positive() ? 1 : 0);
  {
    std::lock_guard lock(mutex_);
    if (code < lits_.size() && lits_[code]) return Expr(lits_[code]);
  }
  Expr e = make(ExprKind::Lit, l, {});
  std::lock_guard lock(mutex_);
  if (code >= lits_.size()) lits_.resize(code + 1, nullptr);
  lits_[code] = e.node();
  return e;
}

Expr ExprManager::junction(ExprKind kind, std::span<const Expr> children) {
  const ExprKind absorbing = kind == ExprKind::And ? ExprKind::False : ExprKind::True;
  const ExprKind neutral = kind == ExprKind::And ? ExprKind::True : ExprKind::False;
  std::vector<Expr> kept;
  kept.reserve(children.size());
  for (Expr c : children) {
    if (c.kind() == absorbing) return c;
    if (c.kind() != neutral) kept.push_back(c);
  }
  if (kept.empty()) return kind == ExprKind::And ? top_ : bottom_;
  if (kept.size() == 1) return kept.front();
  return make(kind, Lit(), std::move(kept));
}

Expr ExprManager::land(std::span<const Expr> children) { return junction(ExprKind::And, children); }
Expr ExprManager::lor(std::span<const Expr> children) { return junction(ExprKind::Or, children); }

Expr ExprManager::negate(Expr root) {
  auto cached = [this](Expr e) -> Expr {
    std::lock_guard lock(mutex_);
    auto it = negation_.find(e.node());
    return it == negation_.end() ? Expr() : Expr(it->second);
  };
  auto remember = [this](Expr e, Expr n) {
    std::lock_guard lock(mutex_);
    negation_.emplace(e.node(), n.node());
    negation_.emplace(n.node(), e.node());
  };

  // Iterative post-order so deep interpolant DAGs do not exhaust the stack.
  std::vector<std::pair<Expr, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [e, expanded] = stack.back();
    stack.pop_back();
    if (!cached(e).null()) continue;
    switch (e.kind()) {
    case ExprKind::True: remember(e, bottom_); continue;
    case ExprKind::False: remember(e, top_); continue;
    case ExprKind::Lit: remember(e, lit(~e.lit())); continue;
    default: break;
    }
    if (!expanded) {
      stack.emplace_back(e, true);
      for (Expr c : e.children())
        if (cached(c).null()) stack.emplace_back(c, false);
      continue;
    }
    std::vector<Expr> negs;
    negs.reserve(e.children().size());
    for (Expr c : e.children()) negs.push_back(cached(c));
    remember(e, e.kind() == ExprKind::And ? lor(negs) : land(negs));
  }
  return cached(root);
}

Expr ExprManager::clause(const Clause& c) {
  std::vector<Expr> lits;
  lits.reserve(c.size());
  for (Lit l : c) lits.push_back(lit(l));
  return lor(lits);
}

Expr ExprManager::cnf(std::span<const Clause> clauses) {
  std::vector<Expr> cs;
  cs.reserve(clauses.size());
  for (const Clause& c : clauses) cs.push_back(clause(c));
  return land(cs);
}

std::size_t ExprManager::size() const {
  std::lock_guard lock(mutex_);
  return nodes_.size();
}

namespace {

// Visits every node reachable from `root` once, children before parents.
template <typename F> void post_order(Expr root, F&& visit) {
  std::unordered_set<const ExprNode*> done;
  std::vector<std::pair<Expr, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [e, expanded] = stack.back();
    stack.pop_back();
    if (done.count(e.node())) continue;
    if (!expanded && !e.children().empty()) {
      stack.emplace_back(e, true);
      for (auto it = e.children().rbegin(); it != e.children().rend(); ++it)
        if (!done.count(it->node())) stack.emplace_back(*it, false);
      continue;
    }
    done.insert(e.node());
    visit(e);
  }
}

} // namespace

std::size_t node_count(Expr e) {
  std::size_t n = 0;
  post_order(e, [&](Expr) { ++n; });
  return n;
}

std::vector<Var> vars_of(Expr e) {
  std::vector<Var> out;
  post_order(e, [&](Expr x) {
    if (x.kind() == ExprKind::Lit) out.push_back(x.lit().var());
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool eval(Expr e, const Assignment& assignment) {
  std::unordered_map<const ExprNode*, bool> value;
  post_order(e, [&](Expr x) {
    bool v = false;
    switch (x.kind()) {
    case ExprKind::True: v = true; break;
    case ExprKind::False: v = false; break;
    case ExprKind::Lit: v = assignment.satisfies(x.lit()); break;
    case ExprKind::And:
      v = std::all_of(x.children().begin(), x.children().end(),
                      [&](Expr c) { return value.at(c.node()); });
      break;
    case ExprKind::Or:
      v = std::any_of(x.children().begin(), x.children().end(),
                      [&](Expr c) { return value.at(c.node()); });
      break;
    }
    value[x.node()] = v;
  });
  return value.at(e.node());
}

std::string to_sexpr(Expr root) {
  // Tree expansion of the DAG, written iteratively.
  std::string out;
  struct Frame {
    Expr e;
    std::size_t next;
  };
  std::vector<Frame> stack{{root, 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    Expr e = f.e;
    switch (e.kind()) {
    case ExprKind::True: out += "true"; stack.pop_back(); break;
    case ExprKind::False: out += "false"; stack.pop_back(); break;
    case ExprKind::Lit: {
      std::string v = "(var " + std::to_string(e.lit().var().index()) + ")";
      out += e.lit().positive() ? v : "(not " + v + ")";
      stack.pop_back();
      break;
    }
    default:
      if (f.next == 0) out += e.kind() == ExprKind::And ? "(and" : "(or";
      if (f.next == e.children().size()) {
        out += ')';
        stack.pop_back();
      } else {
        out += ' ';
        Expr child = e.children()[f.next++];
        stack.push_back({child, 0});
      }
      break;
    }
  }
  return out;
}

namespace {

class SexprParser {
public:
  SexprParser(ExprManager& mgr, std::string_view text) : mgr_(mgr), text_(text) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& why) {
    throw SyntaxError("s-expression: " + why + " at offset " + std::to_string(pos_), 1);
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  std::string_view atom() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')')
      ++pos_;
    if (start == pos_) fail("expected atom");
    return text_.substr(start, pos_ - start);
  }
  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  Expr expr() {
    skip_ws();
    if (!peek('(')) {
      auto a = atom();
      if (a == "true") return mgr_.top();
      if (a == "false") return mgr_.bottom();
      fail("unknown atom '" + std::string(a) + "'");
    }
    expect('(');
    auto head = atom();
    Expr result;
    if (head == "var") {
      auto num = atom();
      unsigned v = 0;
      for (char c : num) {
        if (!std::isdigit(static_cast<unsigned char>(c))) fail("bad variable index");
        v = v * 10 + static_cast<unsigned>(c - '0');
      }
      if (v == 0) fail("variable index must be positive");
      result = mgr_.var(v);
    } else if (head == "not") {
      result = mgr_.negate(expr());
    } else if (head == "and" || head == "or") {
      std::vector<Expr> kids;
      while (!peek(')')) kids.push_back(expr());
      if (kids.empty()) fail("empty junction");
      result = head == "and" ? mgr_.land(kids) : mgr_.lor(kids);
    } else {
      fail("unknown operator '" + std::string(head) + "'");
    }
    expect(')');
    return result;
  }

  ExprManager& mgr_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

Expr parse_sexpr(ExprManager& mgr, std::string_view text) { return SexprParser(mgr, text).parse(); }

} // namespace itp
