#include "itp/formula.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace itp {

Clause::Clause(std::vector<Lit> lits) : lits_(std::move(lits)) {
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
  for (std::size_t i = 1; i < lits_.size(); ++i) {
    if (lits_[i].var() == lits_[i - 1].var())
      throw TautologyError("clause contains both polarities of variable " +
                           std::to_string(lits_[i].var().index()));
  }
}

const Lit* Clause::find(Var v) const {
  auto it = std::lower_bound(lits_.begin(), lits_.end(), Lit(v, false));
  if (it != lits_.end() && it->var() == v) return &*it;
  return nullptr;
}

bool Clause::contains(Lit l) const {
  const Lit* p = find(l.var());
  return p && *p == l;
}

std::string Clause::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::size_t ClauseHash::operator()(const Clause& c) const {
  std::size_t h = c.size();
  for (Lit l : c) h = h * 1000003u ^ static_cast<std::size_t>(l.to_dimacs() + (1L << 31));
  return h;
}

PartitionedCnf::PartitionedCnf(unsigned num_vars, std::vector<std::vector<Clause>> partitions)
    : num_vars_(num_vars), partitions_(std::move(partitions)) {
  if (partitions_.empty()) throw RangeError("a partitioned CNF needs at least one partition");
  for (const auto& part : partitions_)
    for (const Clause& c : part)
      for (Lit l : c)
        if (!l.var().valid() || l.var().index() > num_vars_)
          throw RangeError("variable " + std::to_string(l.var().index()) + " outside 1.." +
                           std::to_string(num_vars_));
}

const std::vector<Clause>& PartitionedCnf::partition(std::size_t k) const {
  if (k < 1 || k > partitions_.size())
    throw RangeError("partition " + std::to_string(k) + " does not exist");
  return partitions_[k - 1];
}

std::size_t PartitionedCnf::num_clauses() const {
  std::size_t n = 0;
  for (const auto& p : partitions_) n += p.size();
  return n;
}

std::vector<std::size_t> PartitionedCnf::partitions_containing(const Clause& c) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < partitions_.size(); ++k)
    if (std::find(partitions_[k].begin(), partitions_[k].end(), c) != partitions_[k].end())
      out.push_back(k + 1);
  return out;
}

PartitionedCnf PartitionedCnf::regroup(const std::vector<std::vector<std::size_t>>& groups) const {
  std::vector<std::vector<Clause>> parts;
  parts.reserve(groups.size());
  for (const auto& g : groups) {
    std::vector<Clause> merged;
    for (std::size_t k : g) {
      const auto& src = partition(k);
      merged.insert(merged.end(), src.begin(), src.end());
    }
    parts.push_back(std::move(merged));
  }
  return PartitionedCnf(num_vars_, std::move(parts));
}

PartitionedCnf PartitionedCnf::padded(std::size_t count) const {
  auto parts = partitions_;
  parts.resize(parts.size() + count);
  return PartitionedCnf(num_vars_, std::move(parts));
}

namespace {

bool parse_long(std::string_view tok, long& out) {
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && p == tok.data() + tok.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

} // namespace

PartitionedCnf parse_dimacs(std::string_view text) {
  bool have_header = false;
  long num_vars = 0, num_clauses = 0;
  std::vector<std::vector<Clause>> parts;
  bool explicit_parts = false;
  std::vector<Lit> pending;
  std::size_t seen_clauses = 0;
  std::size_t lineno = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++lineno;
    auto toks = split_ws(line);
    if (toks.empty()) {
      if (eol == text.size()) break;
      continue;
    }
    if (toks[0] == "c") {
      if (toks.size() >= 2 && toks[1] == "part") {
        long k = 0;
        if (toks.size() != 3 || !parse_long(toks[2], k))
          throw SyntaxError("malformed partition marker", lineno);
        if (!have_header) throw SyntaxError("partition marker before header", lineno);
        if (!pending.empty()) throw SyntaxError("clause split across partitions", lineno);
        if (k != static_cast<long>(parts.size()) + 1 || (!explicit_parts && seen_clauses > 0))
          throw SyntaxError("partition markers must be 1,2,3,... and precede all clauses",
                            lineno);
        explicit_parts = true;
        parts.emplace_back();
      }
      continue;
    }
    if (toks[0] == "%") break;
    if (toks[0] == "p") {
      if (have_header) throw SyntaxError("duplicate header", lineno);
      if (toks.size() != 4 || toks[1] != "cnf" || !parse_long(toks[2], num_vars) ||
          !parse_long(toks[3], num_clauses) || num_vars < 0 || num_clauses < 0)
        throw SyntaxError("malformed header, expected 'p cnf <vars> <clauses>'", lineno);
      have_header = true;
      continue;
    }
    if (!have_header) throw SyntaxError("clause before header", lineno);
    for (auto tok : toks) {
      long v = 0;
      if (!parse_long(tok, v)) throw SyntaxError("bad literal '" + std::string(tok) + "'", lineno);
      if (v == 0) {
        if (parts.empty()) parts.emplace_back();
        parts.back().emplace_back(std::move(pending));
        pending.clear();
        ++seen_clauses;
        continue;
      }
      if (std::labs(v) > num_vars)
        throw RangeError("line " + std::to_string(lineno) + ": variable " +
                         std::to_string(std::labs(v)) + " exceeds declared " +
                         std::to_string(num_vars));
      pending.push_back(Lit::from_dimacs(v));
    }
    if (eol == text.size()) break;
  }
  if (!have_header) throw SyntaxError("missing 'p cnf' header", lineno);
  if (!pending.empty()) throw SyntaxError("last clause is not terminated by 0", lineno);
  if (static_cast<long>(seen_clauses) != num_clauses)
    throw SyntaxError("header declares " + std::to_string(num_clauses) + " clauses, found " +
                          std::to_string(seen_clauses),
                      lineno);
  if (parts.empty()) parts.emplace_back();
  return PartitionedCnf(static_cast<unsigned>(num_vars), std::move(parts));
}

PartitionedCnf read_dimacs_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dimacs(ss.str());
}

std::string write_dimacs(const PartitionedCnf& cnf) {
  std::ostringstream os;
  os << "p cnf " << cnf.num_vars() << ' ' << cnf.num_clauses() << '\n';
  for (std::size_t k = 1; k <= cnf.num_partitions(); ++k) {
    os << "c part " << k << '\n';
    for (const Clause& c : cnf.partition(k)) {
      for (Lit l : c) os << l.to_dimacs() << ' ';
      os << "0\n";
    }
  }
  return os.str();
}

Assignment Assignment::restricted(unsigned num_vars) const {
  Assignment out(num_vars);
  for (unsigned v = 1; v <= num_vars && v < vals_.size(); ++v)
    if (vals_[v] >= 0) out.set(Var(v), vals_[v] == 1);
  return out;
}

std::string Assignment::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (unsigned v = 1; v < vals_.size(); ++v) {
    if (vals_[v] < 0) continue;
    os << (first ? "" : " ") << (vals_[v] == 1 ? "" : "-") << v;
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, Lit l) { return os << l.to_dimacs(); }

std::ostream& operator<<(std::ostream& os, const Clause& c) {
  os << '(';
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
  return os << ')';
}

} // namespace itp
