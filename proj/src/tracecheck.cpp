#include "itp/tracecheck.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace itp {

ImportError::ImportError(Kind kind, long clause_id, const std::string& detail)
    : Error(std::string(kind == Kind::UnknownAntecedent        ? "UnknownAntecedent"
                        : kind == Kind::AmbiguousLeafPartition ? "AmbiguousLeafPartition"
                        : kind == Kind::UnknownLeaf            ? "UnknownLeaf"
                                                               : "DuplicateId") +
            " (clause " + std::to_string(clause_id) + "): " + detail),
      kind_(kind), id_(clause_id) {}

namespace {

struct TraceLine {
  long id;
  Clause clause;
  std::vector<long> antecedents;
  std::size_t pinned_partition; // 0 = none
  std::size_t lineno;
};

std::vector<long> parse_ints(std::string_view line, std::size_t lineno) {
  std::vector<long> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    long v = 0;
    auto [p, ec] = std::from_chars(line.data() + i, line.data() + j, v);
    if (ec != std::errc() || p != line.data() + j)
      throw SyntaxError("bad token '" + std::string(line.substr(i, j - i)) + "'", lineno);
    out.push_back(v);
    i = j;
  }
  return out;
}

} // namespace

ResolutionProof import_tracecheck(std::string_view text, const PartitionedCnf& cnf) {
  std::vector<TraceLine> lines;
  std::map<long, std::size_t> by_id;
  std::size_t pin = 0;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (line[first] == 'c') {
      std::istringstream is{std::string(line.substr(first))};
      std::string c, part;
      long k = 0;
      if (is >> c >> part && part == "part") {
        if (!(is >> k) || k < 1) throw SyntaxError("malformed partition annotation", lineno);
        pin = static_cast<std::size_t>(k);
      }
      continue;
    }
    auto ints = parse_ints(line, lineno);
    if (ints.empty() || ints[0] <= 0) throw SyntaxError("clause id must be positive", lineno);
    std::size_t i = 1;
    std::vector<Lit> lits;
    while (i < ints.size() && ints[i] != 0) lits.push_back(Lit::from_dimacs(ints[i++]));
    if (i >= ints.size()) throw SyntaxError("literal list not terminated by 0", lineno);
    ++i;
    std::vector<long> ants;
    while (i < ints.size() && ints[i] != 0) {
      if (ints[i] < 0) throw SyntaxError("negative antecedent id", lineno);
      ants.push_back(ints[i++]);
    }
    if (i >= ints.size()) throw SyntaxError("antecedent list not terminated by 0", lineno);
    if (i + 1 != ints.size()) throw SyntaxError("trailing tokens", lineno);
    for (Lit l : lits)
      if (l.var().index() > cnf.num_vars())
        throw RangeError("line " + std::to_string(lineno) + ": variable " +
                         std::to_string(l.var().index()) + " not in formula");
    Clause clause;
    try {
      clause = Clause(std::move(lits));
    } catch (const TautologyError&) {
      throw SyntaxError("tautological clause", lineno);
    }
    if (by_id.count(ints[0]))
      throw ImportError(ImportError::Kind::DuplicateId, ints[0], "declared twice");
    by_id[ints[0]] = lines.size();
    const std::size_t pinned = ants.empty() ? pin : 0;
    lines.push_back(TraceLine{ints[0], std::move(clause), std::move(ants), pinned, lineno});
    pin = 0;
  }
  if (lines.empty()) throw SyntaxError("empty trace", lineno);

  for (const auto& l : lines)
    for (long a : l.antecedents)
      if (!by_id.count(a))
        throw ImportError(ImportError::Kind::UnknownAntecedent, l.id,
                          "antecedent " + std::to_string(a) + " is not declared");

  // Materialize nodes in dependency order; a chain may reference later lines.
  ProofBuilder builder;
  std::vector<std::optional<NodeId>> node_of(lines.size());
  std::vector<unsigned char> state(lines.size(), 0);
  auto materialize = [&](std::size_t start) {
    std::vector<std::pair<std::size_t, bool>> stack{{start, false}};
    while (!stack.empty()) {
      auto [idx, expanded] = stack.back();
      stack.pop_back();
      if (node_of[idx]) continue;
      const TraceLine& l = lines[idx];
      if (!expanded) {
        if (state[idx] == 1)
          throw ValidationError(ValidationError::Kind::Cycle, static_cast<NodeId>(l.id),
                                "trace line " + std::to_string(l.lineno));
        state[idx] = 1;
        stack.emplace_back(idx, true);
        for (long a : l.antecedents) {
          std::size_t ai = by_id.at(a);
          if (node_of[ai]) continue;
          if (state[ai] == 1)
            throw ValidationError(ValidationError::Kind::Cycle, static_cast<NodeId>(a),
                                  "trace line " + std::to_string(lines[ai].lineno));
          stack.emplace_back(ai, false);
        }
        continue;
      }
      if (l.antecedents.empty()) {
        std::size_t part = l.pinned_partition;
        if (part == 0) {
          auto parts = cnf.partitions_containing(l.clause);
          if (parts.empty())
            throw ImportError(ImportError::Kind::UnknownLeaf, l.id,
                              l.clause.to_string() + " is not an input clause");
          if (parts.size() > 1)
            throw ImportError(ImportError::Kind::AmbiguousLeafPartition, l.id,
                              l.clause.to_string() + " occurs in several partitions");
          part = parts.front();
        } else if (part > cnf.num_partitions() || cnf.partitions_containing(l.clause).empty() ||
                   std::find(cnf.partition(part).begin(), cnf.partition(part).end(), l.clause) ==
                       cnf.partition(part).end()) {
          throw ValidationError(ValidationError::Kind::BadLeaf, static_cast<NodeId>(l.id),
                                l.clause.to_string() + " is not in partition " + std::to_string(part));
        }
        node_of[idx] = builder.add_leaf(l.clause, part);
      } else if (l.antecedents.size() == 1) {
        // A copy of its antecedent; accepted when the clauses agree.
        NodeId a = *node_of[by_id.at(l.antecedents[0])];
        if (builder.node(a).clause != l.clause)
          throw ChainError(ChainError::Kind::TooShort,
                           "clause " + std::to_string(l.id) + " has a single antecedent");
        node_of[idx] = a;
      } else {
        NodeId acc = *node_of[by_id.at(l.antecedents[0])];
        for (std::size_t k = 1; k < l.antecedents.size(); ++k)
          acc = builder.resolve(acc, *node_of[by_id.at(l.antecedents[k])]);
        if (builder.node(acc).clause != l.clause)
          throw ChainError(ChainError::Kind::Mismatch,
                           "clause " + std::to_string(l.id) + " declares " + l.clause.to_string() +
                               " but the chain derives " + builder.node(acc).clause.to_string());
        node_of[idx] = acc;
      }
      state[idx] = 2;
    }
  };

  std::size_t root_line = lines.size() - 1;
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (lines[i].clause.empty()) {
      root_line = i;
      break;
    }
  for (std::size_t i = 0; i < lines.size(); ++i) materialize(i);
  return builder.build(*node_of[root_line]);
}

ResolutionProof read_tracecheck_file(const std::string& path, const PartitionedCnf& cnf) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return import_tracecheck(ss.str(), cnf);
}

std::string write_tracecheck(const ResolutionProof& proof, const PartitionedCnf* cnf) {
  std::ostringstream os;
  for (NodeId id = 0; id < proof.size(); ++id) {
    const ProofNode& n = proof.node(id);
    if (n.leaf && cnf && cnf->partitions_containing(n.clause).size() > 1)
      os << "c part " << n.partition << '\n';
    os << id + 1;
    for (Lit l : n.clause) os << ' ' << l.to_dimacs();
    os << " 0";
    if (!n.leaf) os << ' ' << n.pos + 1 << ' ' << n.neg + 1;
    os << " 0\n";
  }
  return os.str();
}

} // namespace itp
