#include <doctest.h>

#include "itp/proof.hpp"
#include "itp/tracecheck.hpp"

using namespace itp;

namespace {

const char* kBgsa3 = "p cnf 4 5\nc part 1\n1 -2 0\n3 0\nc part 2\n-1 -3 0\n2 0\nc part 3\n4 0\n";
const char* kP1 = "1 1 -2 0 0\n2 -1 -3 0 0\n3 3 0 0\n4 2 0 0\n5 -2 -3 0 1 2 0\n6 -2 0 5 3 0\n7 0 6 4 0\n";

ResolutionProof unit_proof(std::size_t part_of_p) {
  ProofBuilder b;
  NodeId p = b.add_leaf(Clause{pos(1)}, part_of_p);
  NodeId np = b.add_leaf(Clause{neg(1)}, 2);
  return b.build(b.add_resolvent(Var(1), p, np));
}

} // namespace

TEST_CASE("resolvent") {
  auto r = resolvent(Clause{pos(1), neg(2)}, Clause{neg(1), neg(3)}, Var(1));
  REQUIRE(r);
  CHECK(*r == Clause{neg(2), neg(3)});
  CHECK_FALSE(resolvent(Clause{pos(1), pos(2)}, Clause{neg(1), neg(2)}, Var(1)));
  CHECK_FALSE(resolvent(Clause{pos(1)}, Clause{pos(1)}, Var(1)));
}

TEST_CASE("unit refutation validates; a corrupted tag does not") {
  auto cnf = parse_dimacs("p cnf 1 2\nc part 1\n1 0\nc part 2\n-1 0\n");
  auto ok = unit_proof(1);
  CHECK(ok.size() == 3);
  CHECK(ok.num_leaves() == 2);
  CHECK_FALSE(validate_proof(ok, cnf));
  auto bad = validate_proof(unit_proof(2), cnf);
  REQUIRE(bad);
  CHECK(bad->kind() == ValidationError::Kind::BadLeaf);
}

TEST_CASE("builder trims unreachable nodes and orders topologically") {
  ProofBuilder b;
  NodeId late = b.add_inner(Clause{}, Var(1), 2, 3); // antecedents added afterwards
  b.add_leaf(Clause{pos(5)}, 1);                     // unreachable
  b.add_leaf(Clause{pos(1)}, 1);
  b.add_leaf(Clause{neg(1)}, 2);
  auto proof = b.build(late);
  REQUIRE(proof.size() == 3);
  CHECK(proof.node(proof.root()).clause.empty());
  for (NodeId id = 0; id < proof.size(); ++id)
    if (!proof.node(id).leaf) CHECK((proof.node(id).pos < id && proof.node(id).neg < id));
}

TEST_CASE("cycles are rejected") {
  ProofBuilder b;
  b.add_inner(Clause{}, Var(1), 1, 2);
  b.add_inner(Clause{pos(1)}, Var(2), 0, 2);
  b.add_leaf(Clause{neg(1)}, 1);
  CHECK_THROWS_AS(b.build(0), ValidationError);
}

TEST_CASE("bad resolvent and non-empty root") {
  auto cnf = parse_dimacs("p cnf 2 2\nc part 1\n1 2 0\nc part 2\n-1 0\n");
  ProofBuilder b;
  NodeId a = b.add_leaf(Clause{pos(1), pos(2)}, 1);
  NodeId c = b.add_leaf(Clause{neg(1)}, 2);
  NodeId r = b.add_inner(Clause{}, Var(1), a, c);
  auto err = validate_proof(b.build(r), cnf);
  REQUIRE(err);
  CHECK(err->kind() == ValidationError::Kind::BadResolvent);

  ProofBuilder b2;
  NodeId a2 = b2.add_leaf(Clause{pos(1), pos(2)}, 1);
  NodeId c2 = b2.add_leaf(Clause{neg(1)}, 2);
  auto proof = b2.build(b2.add_resolvent(Var(1), a2, c2));
  err = validate_proof(proof, cnf);
  REQUIRE(err);
  CHECK(err->kind() == ValidationError::Kind::RootNotEmpty);
  CHECK_FALSE(validate_proof(proof, cnf, {.require_refutation = false}));
}

TEST_CASE("chain_to_binary") {
  std::vector<Clause> chain{Clause{pos(1), neg(2)}, Clause{neg(1), neg(3)}, Clause{pos(3)}, Clause{pos(2)}};
  auto steps = chain_to_binary(chain);
  REQUIRE(steps.size() == 3);
  CHECK(steps[0].pivot == Var(1));
  CHECK(steps[0].resolvent == Clause{neg(2), neg(3)});
  CHECK(steps[0].accumulator_positive);
  CHECK(steps[1].pivot == Var(3));
  CHECK_FALSE(steps[1].accumulator_positive);
  CHECK(steps[2].resolvent.empty());

  std::vector<Clause> two_pivots{Clause{pos(1), pos(2)}, Clause{neg(1), neg(2)}};
  try {
    chain_to_binary(two_pivots);
    FAIL("expected ChainError");
  } catch (const ChainError& e) {
    CHECK(e.kind() == ChainError::Kind::AmbiguousPivot);
  }
  std::vector<Clause> none{Clause{pos(1)}, Clause{pos(2)}};
  try {
    chain_to_binary(none);
    FAIL("expected ChainError");
  } catch (const ChainError& e) {
    CHECK(e.kind() == ChainError::Kind::NoPivot);
  }
  CHECK_THROWS_AS(chain_to_binary(std::vector<Clause>{Clause{pos(1)}}), ChainError);
}

TEST_CASE("tracecheck: the four-leaf refutation imports and validates") {
  auto cnf = parse_dimacs(kBgsa3);
  auto proof = import_tracecheck(kP1, cnf);
  CHECK(proof.size() == 7);
  CHECK(proof.num_leaves() == 4);
  CHECK_FALSE(validate_proof(proof, cnf));
  const auto& root = proof.node(proof.root());
  CHECK(root.pivot == Var(2));
  // Leaves never include the clause over s.
  for (const auto& n : proof.nodes()) CHECK_FALSE(n.clause.contains(pos(4)));
}

TEST_CASE("tracecheck: derivation with one inner node") {
  auto cnf = parse_dimacs("p cnf 2 2\nc part 1\n1 -2 0\nc part 2\n-1 0\n");
  auto proof = import_tracecheck("1 1 -2 0 0\n2 -1 0 0\n3 -2 0 1 2 0\n", cnf);
  REQUIRE(proof.size() == 3);
  CHECK(proof.node(2).pivot == Var(1));
  CHECK(proof.node(2).clause == Clause{neg(2)});
  CHECK_FALSE(validate_proof(proof, cnf, {.require_refutation = false}));
  CHECK(validate_proof(proof, cnf)->kind() == ValidationError::Kind::RootNotEmpty);
}

TEST_CASE("tracecheck: leaf-only trace has a non-empty root") {
  auto cnf = parse_dimacs("p cnf 2 2\nc part 1\n1 -2 0\nc part 2\n-1 0\n");
  auto proof = import_tracecheck("1 1 -2 0 0\n2 -1 0 0\n", cnf);
  auto err = validate_proof(proof, cnf);
  REQUIRE(err);
  CHECK(err->kind() == ValidationError::Kind::RootNotEmpty);
}

TEST_CASE("tracecheck: errors") {
  auto cnf = parse_dimacs("p cnf 2 4\nc part 1\n1 2 0\n-1 0\nc part 2\n-1 -2 0\n-1 0\n");
  CHECK_THROWS_AS(import_tracecheck("1 1 2 0 0\n2 -1 -2 0 0\n3 0 1 2 0\n", cnf), ChainError);
  CHECK_THROWS_AS(import_tracecheck("1 1 2 0 0\n3 2 0 1 9 0\n", cnf), ImportError);
  try {
    import_tracecheck("1 -1 0 0\n", cnf);
    FAIL("expected ImportError");
  } catch (const ImportError& e) {
    CHECK(e.kind() == ImportError::Kind::AmbiguousLeafPartition);
  }
  auto pinned = import_tracecheck("c part 2\n1 -1 0 0\n", cnf);
  CHECK(pinned.node(0).partition == 2);
  CHECK_THROWS_AS(import_tracecheck("1 1 2 0\n", cnf), SyntaxError);
  CHECK_THROWS_AS(import_tracecheck("1 1 x 0 0\n", cnf), SyntaxError);
  CHECK_THROWS_AS(import_tracecheck("1 1 2 0 0\n2 -1 0 0\n3 2 0 1 2 0\n", cnf), ImportError); // -1 is ambiguous
  // chain derives (2) but (1) is declared
  CHECK_THROWS_AS(import_tracecheck("1 1 2 0 0\nc part 1\n2 -1 0 0\n3 1 0 1 2 0\n", cnf), ChainError);
}

TEST_CASE("tracecheck: write and re-import") {
  auto cnf = parse_dimacs(kBgsa3);
  auto proof = import_tracecheck(kP1, cnf);
  auto again = import_tracecheck(write_tracecheck(proof, &cnf), cnf);
  REQUIRE(again.size() == proof.size());
  for (NodeId id = 0; id < proof.size(); ++id) {
    CHECK(again.node(id).clause == proof.node(id).clause);
    CHECK(again.node(id).partition == proof.node(id).partition);
  }
}

TEST_CASE("regroup_proof retags leaves") {
  auto cnf = parse_dimacs(kBgsa3);
  auto proof = import_tracecheck(kP1, cnf);
  auto merged = regroup_proof(proof, {{1, 2}, {3}});
  CHECK_FALSE(validate_proof(merged, cnf.regroup({{1, 2}, {3}})));
  CHECK_THROWS_AS(regroup_proof(proof, {{1}, {3}}), RangeError);
}
