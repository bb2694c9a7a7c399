#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "itp/formula.hpp"
#include "itp/proof.hpp"

namespace itp {

// Ordered b ⪯ ab ⪯ a.
enum class Label : std::uint8_t { b = 0, ab = 1, a = 2 };

inline bool leq(Label x, Label y) { return static_cast<int>(x) <= static_cast<int>(y); }
inline Label join(Label x, Label y) { return x == y ? x : Label::ab; }
const char* to_string(Label l);
std::optional<Label> parse_label(std::string_view text);

// The A side of a split of Φ; every other partition is on the B side.
struct Configuration {
  std::set<std::size_t> a_parts;

  bool in_a(std::size_t partition) const { return a_parts.count(partition) != 0; }
  std::string to_string() const; // "{1,2}"
  bool operator==(const Configuration&) const = default;
};

// Parses "1,3" (the value of --config A=1,3). An empty string is the empty A side.
Configuration parse_configuration(std::string_view text);

enum class VarClass : std::uint8_t { A, B, AB };
const char* to_string(VarClass c);

// Classes of all variables for one configuration, from literal occurrences in
// the cnf partitions. Variables occurring nowhere have no class.
class ClassTable {
public:
  ClassTable(const PartitionedCnf& cnf, const Configuration& config);
  std::optional<VarClass> get(Var v) const;
  // Throws UnknownVar when `v` does not occur in the cnf.
  VarClass at(Var v) const;

private:
  std::vector<std::uint8_t> bits_; // bit 0: occurs in A, bit 1: occurs in B
};

VarClass var_class(Var v, const PartitionedCnf& cnf, const Configuration& config);

enum class System : std::uint8_t { McMillan, Pudlak, McMillanPrime };
const char* to_string(System s);
Label label_of(System s); // b, ab, a

struct Uniform {
  System system;
  bool operator==(const Uniform&) const = default;
};
struct PerVariable {
  std::map<unsigned, Label> labels;
  std::optional<Label> fallback; // label for AB variables missing from the map
  bool operator==(const PerVariable&) const = default;
};
struct PerOccurrence {
  std::map<std::pair<NodeId, unsigned>, Label> labels; // (leaf id, var) -> label
  bool operator==(const PerOccurrence&) const = default;
};
using LabelingRule = std::variant<Uniform, PerVariable, PerOccurrence>;

struct LabelingSpec {
  LabelingRule rule;
  Configuration config;
};

inline LabelingRule mcmillan() { return Uniform{System::McMillan}; }
inline LabelingRule pudlak() { return Uniform{System::Pudlak}; }
inline LabelingRule mcmillan_prime() { return Uniform{System::McMillanPrime}; }

// Label of an AB-class occurrence under `rule`, or nullopt when the rule does
// not say (SpecIncomplete at the call site). Class-forced labels are not
// handled here.
std::optional<Label> rule_label(const LabelingRule& rule, NodeId leaf, Var v);

// Effective label of `v` in leaf `leaf`: a for class A, b for class B, the
// rule's choice for class AB. Throws UnknownVar, SpecIncomplete.
Label resolve_label(const LabelingSpec& spec, const PartitionedCnf& cnf, NodeId leaf, Var v);

enum class Ordering { LEQ, GEQ, EQ, INCOMPARABLE };
const char* to_string(Ordering o);

// Pointwise comparison over the AB occurrences in the proof's leaves.
// Throws ConfigMismatch when the specs use different configurations.
Ordering compare_labelings(const LabelingSpec& l1, const LabelingSpec& l2, const ResolutionProof& proof,
                           const PartitionedCnf& cnf);

// "M" | "P" | "M'" | "var:<k>=<label>,…" where "*=<label>" sets the label of
// every unmapped variable. Throws UsageError.
LabelingRule parse_labeling(std::string_view text);
std::string to_string(const LabelingRule& rule);

// Comma-separated labelings. A token "<k>=<label>" or "*=<label>" continues
// the var: labeling before it, so "M,var:1=a,2=b,P" has three slots. When the
// text contains ';' it is the only separator.
std::vector<LabelingRule> parse_family(std::string_view text);

} // namespace itp
