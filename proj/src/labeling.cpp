#include "itp/labeling.hpp"

#include <charconv>
#include <sstream>

namespace itp {

const char* to_string(Label l) {
  switch (l) {
  case Label::a: return "a";
  case Label::b: return "b";
  case Label::ab: return "ab";
  }
  return "?";
}

std::optional<Label> parse_label(std::string_view text) {
  if (text == "a") return Label::a;
  if (text == "b") return Label::b;
  if (text == "ab") return Label::ab;
  return std::nullopt;
}

std::string Configuration::to_string() const {
  std::string s = "{";
  for (std::size_t k : a_parts) {
    if (s.size() > 1) s += ',';
    s += std::to_string(k);
  }
  return s + "}";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t p = s.find(sep, start);
    out.push_back(trim(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start)));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

std::optional<unsigned long> parse_index(std::string_view s) {
  unsigned long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

} // namespace

Configuration parse_configuration(std::string_view text) {
  Configuration c;
  text = trim(text);
  if (text.empty()) return c;
  for (auto tok : split(text, ',')) {
    auto k = parse_index(tok);
    if (!k || *k == 0) throw UsageError("bad partition index '" + std::string(tok) + "' in configuration");
    c.a_parts.insert(*k);
  }
  return c;
}

const char* to_string(VarClass c) {
  switch (c) {
  case VarClass::A: return "A";
  case VarClass::B: return "B";
  case VarClass::AB: return "AB";
  }
  return "?";
}

ClassTable::ClassTable(const PartitionedCnf& cnf, const Configuration& config)
    : bits_(cnf.num_vars() + 1, 0) {
  for (std::size_t k = 1; k <= cnf.num_partitions(); ++k) {
    const std::uint8_t side = config.in_a(k) ? 1 : 2;
    for (const Clause& c : cnf.partition(k))
      for (Lit l : c) bits_[l.var().index()] |= side;
  }
}

std::optional<VarClass> ClassTable::get(Var v) const {
  if (v.index() >= bits_.size()) return std::nullopt;
  switch (bits_[v.index()]) {
  case 1: return VarClass::A;
  case 2: return VarClass::B;
  case 3: return VarClass::AB;
  default: return std::nullopt;
  }
}

VarClass ClassTable::at(Var v) const {
  auto c = get(v);
  if (!c) throw UnknownVar("variable " + std::to_string(v.index()) + " does not occur in the formula");
  return *c;
}

VarClass var_class(Var v, const PartitionedCnf& cnf, const Configuration& config) {
  return ClassTable(cnf, config).at(v);
}

const char* to_string(System s) {
  switch (s) {
  case System::McMillan: return "M";
  case System::Pudlak: return "P";
  case System::McMillanPrime: return "M'";
  }
  return "?";
}

Label label_of(System s) {
  switch (s) {
  case System::McMillan: return Label::b;
  case System::Pudlak: return Label::ab;
  case System::McMillanPrime: return Label::a;
  }
  return Label::ab;
}

std::optional<Label> rule_label(const LabelingRule& rule, NodeId leaf, Var v) {
  if (auto* u = std::get_if<Uniform>(&rule)) return label_of(u->system);
  if (auto* pv = std::get_if<PerVariable>(&rule)) {
    auto it = pv->labels.find(v.index());
    if (it != pv->labels.end()) return it->second;
    return pv->fallback;
  }
  const auto& po = std::get<PerOccurrence>(rule);
  auto it = po.labels.find({leaf, v.index()});
  if (it == po.labels.end()) return std::nullopt;
  return it->second;
}

Label resolve_label(const LabelingSpec& spec, const PartitionedCnf& cnf, NodeId leaf, Var v) {
  switch (var_class(v, cnf, spec.config)) {
  case VarClass::A: return Label::a;
  case VarClass::B: return Label::b;
  case VarClass::AB: break;
  }
  auto l = rule_label(spec.rule, leaf, v);
  if (!l)
    throw SpecIncomplete("no label for AB variable " + std::to_string(v.index()) + " in leaf " +
                         std::to_string(leaf));
  return *l;
}

const char* to_string(Ordering o) {
  switch (o) {
  case Ordering::LEQ: return "LEQ";
  case Ordering::GEQ: return "GEQ";
  case Ordering::EQ: return "EQ";
  case Ordering::INCOMPARABLE: return "INCOMPARABLE";
  }
  return "?";
}

Ordering compare_labelings(const LabelingSpec& l1, const LabelingSpec& l2, const ResolutionProof& proof,
                           const PartitionedCnf& cnf) {
  if (!(l1.config == l2.config))
    throw ConfigMismatch("labelings relative to " + l1.config.to_string() + " and " + l2.config.to_string());
  ClassTable classes(cnf, l1.config);
  bool le = true, ge = true;
  for (NodeId id = 0; id < proof.size(); ++id) {
    const ProofNode& n = proof.node(id);
    if (!n.leaf) continue;
    for (Lit lit : n.clause) {
      if (classes.at(lit.var()) != VarClass::AB) continue;
      auto x = rule_label(l1.rule, id, lit.var());
      auto y = rule_label(l2.rule, id, lit.var());
      if (!x || !y)
        throw SpecIncomplete("no label for AB variable " + std::to_string(lit.var().index()) + " in leaf " +
                             std::to_string(id));
      le = le && leq(*x, *y);
      ge = ge && leq(*y, *x);
    }
  }
  if (le && ge) return Ordering::EQ;
  if (le) return Ordering::LEQ;
  if (ge) return Ordering::GEQ;
  return Ordering::INCOMPARABLE;
}

namespace {

void add_var_token(PerVariable& pv, std::string_view tok, std::string_view whole) {
  auto eq = tok.find('=');
  if (eq == std::string_view::npos)
    throw UsageError("labeling '" + std::string(whole) + "': expected <var>=<label>, got '" + std::string(tok) + "'");
  auto key = trim(tok.substr(0, eq));
  auto lab = parse_label(trim(tok.substr(eq + 1)));
  if (!lab)
    throw UsageError("labeling '" + std::string(whole) + "': bad label '" + std::string(tok.substr(eq + 1)) + "'");
  if (key == "*") {
    pv.fallback = *lab;
    return;
  }
  auto k = parse_index(key);
  if (!k || *k == 0)
    throw UsageError("labeling '" + std::string(whole) + "': bad variable '" + std::string(key) + "'");
  pv.labels[static_cast<unsigned>(*k)] = *lab;
}

bool is_continuation(std::string_view tok) {
  auto eq = tok.find('=');
  if (eq == std::string_view::npos) return false;
  auto key = trim(tok.substr(0, eq));
  return key == "*" || parse_index(key).has_value();
}

} // namespace

LabelingRule parse_labeling(std::string_view text) {
  text = trim(text);
  if (text == "M") return mcmillan();
  if (text == "P") return pudlak();
  if (text == "M'") return mcmillan_prime();
  if (text.substr(0, 4) == "var:") {
    PerVariable pv;
    auto body = text.substr(4);
    if (trim(body).empty()) return pv;
    for (auto tok : split(body, ',')) add_var_token(pv, tok, text);
    return pv;
  }
  throw UsageError("unknown labeling '" + std::string(text) + "' (expected M, P, M' or var:<k>=<label>,...)");
}

std::string to_string(const LabelingRule& rule) {
  if (auto* u = std::get_if<Uniform>(&rule)) return to_string(u->system);
  if (auto* pv = std::get_if<PerVariable>(&rule)) {
    std::string s = "var:";
    bool first = true;
    for (auto [v, l] : pv->labels) {
      if (!first) s += ',';
      first = false;
      s += std::to_string(v) + "=" + to_string(l);
    }
    if (pv->fallback) s += std::string(first ? "" : ",") + "*=" + to_string(*pv->fallback);
    return s;
  }
  std::ostringstream os;
  os << "occ:";
  bool first = true;
  for (auto [key, l] : std::get<PerOccurrence>(rule).labels) {
    os << (first ? "" : ",") << key.first << '/' << key.second << '=' << to_string(l);
    first = false;
  }
  return os.str();
}

std::vector<LabelingRule> parse_family(std::string_view text) {
  std::vector<LabelingRule> out;
  if (text.find(';') != std::string_view::npos) {
    for (auto tok : split(text, ';')) out.push_back(parse_labeling(tok));
    return out;
  }
  for (auto tok : split(text, ',')) {
    if (is_continuation(tok)) {
      if (out.empty() || !std::holds_alternative<PerVariable>(out.back()))
        throw UsageError("family '" + std::string(text) + "': '" + std::string(tok) +
                         "' does not follow a var: labeling");
      add_var_token(std::get<PerVariable>(out.back()), tok, text);
      continue;
    }
    out.push_back(parse_labeling(tok));
  }
  return out;
}

} // namespace itp
