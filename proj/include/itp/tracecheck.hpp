#pragma once

#include <string>
#include <string_view>

#include "itp/proof.hpp"

namespace itp {

class ImportError : public Error {
public:
  enum class Kind { UnknownAntecedent, AmbiguousLeafPartition, UnknownLeaf, DuplicateId };
  ImportError(Kind kind, long clause_id, const std::string& detail);
  Kind kind() const { return kind_; }
  long clause_id() const { return id_; }

private:
  Kind kind_;
  long id_;
};

// TraceCheck resolution trace: one line per clause,
//   <id> <lit>* 0 <antecedent-id>* 0
// Leaves have no antecedents and are matched to the partition holding the same
// clause; "c part <k>" on the line before a leaf pins it to partition k when
// the clause occurs in several partitions. A chain of k antecedents becomes
// k-1 binary resolutions (left fold). The root is the first empty clause, or
// the last line when the trace derives none.
//
// Errors: SyntaxError, ImportError, ChainError, ValidationError (Cycle, or
// BadLeaf for a pinned partition that lacks the clause).
ResolutionProof import_tracecheck(std::string_view text, const PartitionedCnf& cnf);
ResolutionProof read_tracecheck_file(const std::string& path, const PartitionedCnf& cnf);

// One line per proof node, ids 1..N. With a cnf, leaves whose clause occurs in
// more than one partition are preceded by a "c part" annotation.
std::string write_tracecheck(const ResolutionProof& proof, const PartitionedCnf* cnf = nullptr);

} // namespace itp
