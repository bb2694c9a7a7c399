#include <doctest.h>

#include <random>

#include "itp/sat.hpp"
#include "support.hpp"

using namespace itp;

namespace {
const char* kBgsa3 = "p cnf 4 5\nc part 1\n1 -2 0\n3 0\nc part 2\n-1 -3 0\n2 0\nc part 3\n4 0\n";

bool model_satisfies(const Assignment& a, const PartitionedCnf& cnf) {
  for (const auto& part : cnf.partitions())
    for (const Clause& c : part) {
      bool sat = false;
      for (Lit l : c) sat = sat || a.satisfies(l);
      if (!sat) return false;
    }
  return true;
}
} // namespace

TEST_CASE("single unit is satisfiable") {
  auto r = solve(parse_dimacs("p cnf 1 1\nc part 1\n1 0\n"));
  REQUIRE(r.is_sat());
  CHECK(r.model().get(Var(1)));
}

TEST_CASE("two contradicting units give the smallest refutation") {
  auto cnf = parse_dimacs("p cnf 1 2\nc part 1\n1 0\nc part 2\n-1 0\n");
  auto r = solve(cnf);
  REQUIRE_FALSE(r.is_sat());
  const auto& proof = r.proof();
  CHECK(proof.size() == 3);
  CHECK(proof.node(proof.root()).pivot == Var(1));
  CHECK_FALSE(validate_proof(proof, cnf));
}

TEST_CASE("three-partition formula: refutation avoids the irrelevant clause") {
  auto cnf = parse_dimacs(kBgsa3);
  for (std::uint64_t seed : {0, 1, 2, 3}) {
    auto r = solve(cnf, {.seed = seed});
    REQUIRE_FALSE(r.is_sat());
    CHECK_FALSE(validate_proof(r.proof(), cnf));
    for (const auto& n : r.proof().nodes())
      if (n.leaf) CHECK(n.partition != 3);
  }
}

TEST_CASE("empty input clause is its own refutation") {
  auto cnf = PartitionedCnf(1, {{Clause{pos(1)}}, {Clause{}}});
  auto r = solve(cnf);
  REQUIRE_FALSE(r.is_sat());
  CHECK(r.proof().size() == 1);
  CHECK(r.proof().node(0).partition == 2);
  CHECK_FALSE(validate_proof(r.proof(), cnf));
}

TEST_CASE("agrees with the truth table and produces valid proofs") {
  std::mt19937_64 rng(2024);
  int unsat = 0;
  for (int i = 0; i < 600; ++i) {
    const unsigned n = 1 + rng() % 12;
    auto cnf = test::random_cnf(rng, n, 1 + rng() % (4 * n + 4), 1 + rng() % 4);
    auto truth = test::brute_force_sat(cnf);
    auto r = solve(cnf, {.seed = rng() % 3});
    REQUIRE(r.is_sat() == truth.has_value());
    if (r.is_sat()) {
      CHECK(model_satisfies(r.model(), cnf));
    } else {
      ++unsat;
      auto err = validate_proof(r.proof(), cnf);
      CHECK_MESSAGE(!err, (err ? err->what() : ""));
    }
  }
  CHECK(unsat > 100);
}

TEST_CASE("same seed, same proof") {
  std::mt19937_64 rng(99);
  auto cnf = test::random_unsat_cnf(rng, 10, 45, 2);
  auto a = solve(cnf, {.seed = 5}).proof();
  auto b = solve(cnf, {.seed = 5}).proof();
  REQUIRE(a.size() == b.size());
  for (NodeId id = 0; id < a.size(); ++id) CHECK(a.node(id).clause == b.node(id).clause);
}

TEST_CASE("conflict budget") {
  // Pigeonhole 5 into 4 needs many conflicts.
  std::vector<Clause> cls;
  auto x = [](unsigned p, unsigned h) { return 4 * p + h + 1; };
  for (unsigned p = 0; p < 5; ++p) {
    std::vector<Lit> l;
    for (unsigned h = 0; h < 4; ++h) l.push_back(pos(x(p, h)));
    cls.emplace_back(l);
  }
  for (unsigned h = 0; h < 4; ++h)
    for (unsigned p = 0; p < 5; ++p)
      for (unsigned q = p + 1; q < 5; ++q) cls.push_back(Clause{neg(x(p, h)), neg(x(q, h))});
  PartitionedCnf php(20, {cls});
  CHECK_THROWS_AS(solve(php, {.conflict_limit = 3}), ResourceLimit);
  auto r = solve(php);
  REQUIRE_FALSE(r.is_sat());
  CHECK_FALSE(validate_proof(r.proof(), php));
}

TEST_CASE("implication and equivalence") {
  ExprManager m;
  Expr i1 = m.lor(m.land(m.var(1), m.var(3)), m.lit(neg(2)));
  Expr i2 = m.lor(m.land(m.lit(neg(1)), m.var(2)), m.lit(neg(3)));
  auto r = check_implication(m.land(i1, i2), m.bottom(), 4);
  REQUIRE_FALSE(r.holds);
  CHECK_FALSE(r.counter_model.get(Var(2)));
  CHECK_FALSE(r.counter_model.get(Var(3)));
  CHECK(r.counter_model.max_var() == 4);

  CHECK(check_implication(i1, i1, 3).holds);
  Expr phi1 = m.land(m.lor(m.var(1), m.lit(neg(2))), m.var(3));
  CHECK(check_implication(phi1, i1, 3).holds);
  CHECK(test::brute_force_implies(phi1, i1, 3));

  CHECK(check_equivalence(i1, i1, 3).holds);
  CHECK_FALSE(check_equivalence(m.var(1), m.lit(neg(1)), 1).holds);
  CHECK(check_implication(m.bottom(), m.var(1), 1).holds);
  CHECK(check_implication(m.var(1), m.top(), 1).holds);
}

TEST_CASE("implication agrees with the truth table") {
  ExprManager m;
  std::mt19937_64 rng(8);
  auto rnd = [&](auto& self, int depth) -> Expr {
    if (depth == 0 || rng() % 3 == 0) return m.lit(Lit(Var(1 + rng() % 5), rng() & 1));
    std::vector<Expr> k{self(self, depth - 1), self(self, depth - 1)};
    return rng() & 1 ? m.land(k) : m.lor(k);
  };
  for (int i = 0; i < 300; ++i) {
    Expr a = rnd(rnd, 3), b = rnd(rnd, 3);
    auto r = check_implication(a, b, 5);
    CHECK(r.holds == test::brute_force_implies(a, b, 5));
    if (!r.holds) CHECK((eval(a, r.counter_model) && !eval(b, r.counter_model)));
  }
}
