#include <doctest.h>

#include <random>

#include "itp/collectives.hpp"
#include "itp/tracecheck.hpp"
#include "support.hpp"

using namespace itp;

namespace {

const std::string kData = ITP_TEST_DATA;
const std::string kBgsa3 = kData + "/bgsa3.cnf";

using Edges = std::vector<std::pair<unsigned, unsigned>>;

bool negated(const Assignment& a, unsigned v) { return a.has(Var(v)) && !a.get(Var(v)); }

std::vector<LabelingRule> uniform(std::size_t n, LabelingRule r) { return std::vector<LabelingRule>(n, r); }

} // namespace

TEST_CASE("tree builders") {
  CHECK(build_gsa_tree(2).edges() == Edges{{0, 1}, {0, 2}, {3, 0}});
  CHECK(build_gsa_tree(2).size() == 4);
  CHECK(build_gsa_tree(1).edges() == Edges{{0, 1}, {2, 0}});
  CHECK(build_gsa_tree(3).edges() == Edges{{0, 1}, {0, 2}, {0, 3}, {4, 0}});
  CHECK(build_gsa_tree(3).root() == 4);
  CHECK_FALSE(build_gsa_tree(3).node(0).partition);
  CHECK(build_sti_tree(2).edges() == Edges{{3, 1}, {4, 2}, {4, 3}});
  CHECK(build_sti_tree(1).edges() == Edges{{2, 1}});
  CHECK(build_sti_tree(3).edges() == Edges{{4, 1}, {5, 2}, {5, 4}, {6, 3}, {6, 5}});
  CHECK(build_sti_tree(3).root() == 6);
  CHECK(build_sti_tree(3).subtree_partitions(5) == std::set<std::size_t>{1, 2});
}

TEST_CASE("tree parsing") {
  Tree t = read_tree_file(kData + "/chain3.tree");
  CHECK(t.root() == 3);
  CHECK(t.edges() == Edges{{2, 1}, {3, 2}});
  CHECK(t.subtree_partitions(2) == std::set<std::size_t>{1, 2});
  CHECK_THROWS_AS(parse_tree("1 0\n2 0\n"), UsageError);
  CHECK_THROWS_AS(parse_tree("1 2\n2 1\n3 0\n"), UsageError);
  CHECK_THROWS_AS(parse_tree("1 5\n2 0\n"), UsageError);
  CHECK_THROWS_AS(parse_tree("1 x\n"), SyntaxError);
}

TEST_CASE("three-part instance under a fixed proof") {
  ExprManager m;
  auto cnf = read_dimacs_file(kBgsa3);
  auto p1 = read_tracecheck_file(kData + "/bgsa3_p1.trace", cnf);
  CheckOptions o;
  o.proof = &p1;

  SUBCASE("pi with M' everywhere holds") { CHECK(check_pi(m, cnf, uniform(4, mcmillan_prime()), o).holds()); }
  SUBCASE("sa") {
    CHECK(check_sa(m, cnf, uniform(3, mcmillan()), o).holds());
    auto r = check_sa(m, cnf, {mcmillan_prime(), mcmillan_prime(), mcmillan()}, o);
    REQUIRE_FALSE(r.holds());
    CHECK(negated(r.obligations[0].counter_model, 2));
    CHECK(negated(r.obligations[0].counter_model, 3));
    CHECK(check_sa(m, cnf, uniform(4, mcmillan()), o).obligations.size() == 1);
  }
  SUBCASE("bgsa") {
    auto r = check_bgsa(m, cnf, {mcmillan_prime(), mcmillan_prime(), mcmillan()}, o);
    REQUIRE(r.obligations.size() == 1);
    REQUIRE_FALSE(r.holds());
    CHECK(negated(r.obligations[0].counter_model, 2));
    CHECK(negated(r.obligations[0].counter_model, 3));
    CHECK(r.to_text(false) == "OBLIGATION 1 FAILS " + r.obligations[0].counter_model.to_string() + "\n");
    CHECK(check_bgsa(m, cnf, uniform(3, mcmillan()), o).holds());
    CHECK(check_bgsa(m, cnf, uniform(3, pudlak()), o).holds());
  }
  SUBCASE("gsa with n=2 is bgsa") {
    for (auto fam : {std::vector<LabelingRule>{mcmillan_prime(), mcmillan_prime(), mcmillan()}, uniform(3, mcmillan()),
                     uniform(3, pudlak())})
      CHECK(check_gsa(m, cnf, fam, o).holds() == check_bgsa(m, cnf, fam, o).holds());
  }
  SUBCASE("chain tree agrees with pi") {
    Tree t = read_tree_file(kData + "/chain3.tree");
    auto r = check_tree(m, cnf, t, uniform(3, mcmillan()), o);
    CHECK(r.holds());
    CHECK(r.holds() == check_pi(m, cnf, uniform(4, mcmillan()), o).holds());
    CHECK(r.obligations.back().rhs.is_false());
  }
  SUBCASE("mcmillan is not symmetric here") {
    auto two = cnf.regroup({{1}, {2, 3}});
    auto proof = regroup_proof(p1, {{1}, {2, 3}});
    CheckOptions o2;
    o2.proof = &proof;
    CHECK_FALSE(check_symmetry(m, two, mcmillan(), o2).holds());
    CHECK(check_symmetry(m, two, pudlak(), o2).holds());
  }
}

TEST_CASE("padded three-part instance fails 3-gsa") {
  ExprManager m;
  auto cnf = parse_dimacs("p cnf 4 5\nc part 1\n1 -2 0\n3 0\nc part 2\n-1 -3 0\n2 0\nc part 3\nc part 4\n4 0\n");
  auto p1 = read_tracecheck_file(kData + "/bgsa3_p1.trace", cnf);
  CheckOptions o;
  o.proof = &p1;
  CHECK_FALSE(check_gsa(m, cnf, {mcmillan_prime(), mcmillan_prime(), mcmillan(), mcmillan()}, o).holds());
  CHECK(check_gsa(m, cnf, uniform(4, pudlak()), o).holds());
}

TEST_CASE("solver-backed checks") {
  ExprManager m;
  auto cnf = read_dimacs_file(kBgsa3);
  CHECK(check_pi(m, cnf, uniform(4, mcmillan_prime())).holds());
  CHECK(check_sti(m, cnf, uniform(7, mcmillan())).holds());
  auto one = cnf.regroup({{1, 2, 3}});
  auto sti1 = check_sti(m, one, uniform(3, pudlak()));
  CHECK(sti1.holds());
  CHECK(sti1.obligations.size() == 1);
  CHECK(check_sa(m, one, {mcmillan()}).holds());
  CHECK(check_pi(m, cnf.regroup({{1}, {2, 3}}), {mcmillan_prime(), mcmillan(), pudlak()}).holds());
  auto two = cnf.regroup({{1}, {2, 3}});
  CHECK(check_symmetry(m, two, pudlak()).holds());
  CHECK(check_symmetry(m, cnf.regroup({{}, {1, 2, 3}}), mcmillan()).holds());
}

TEST_CASE("errors") {
  ExprManager m;
  auto cnf = read_dimacs_file(kBgsa3);
  CHECK_THROWS_AS(check_pi(m, cnf, uniform(3, mcmillan())), UsageError);
  CHECK_THROWS_AS(check_sa(m, cnf, uniform(5, mcmillan())), UsageError);
  CHECK_THROWS_AS(check_bgsa(m, cnf.regroup({{1}, {2, 3}}), uniform(2, mcmillan())), UsageError);
  CHECK_THROWS_AS(check_sti(m, cnf, uniform(6, mcmillan())), UsageError);
  auto sat = parse_dimacs("p cnf 2 2\nc part 1\n1 2 0\nc part 2\n-1 0\n");
  try {
    check_pi(m, sat, uniform(3, mcmillan()));
    FAIL("expected NotUnsat");
  } catch (const NotUnsat& e) {
    CHECK(e.model() == "-1 2");
  }
  CHECK_THROWS_AS(parse_collective("foo"), UsageError);
  CHECK(parse_collective("sti") == CollectiveKind::STI);
}

TEST_CASE("serial and parallel reports are identical") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = 2 + rng() % 3;
    const unsigned vars = 4 + rng() % 5;
    auto cnf = test::random_unsat_cnf(rng, vars, 8 + rng() % 14, n);
    CheckOptions serial, parallel;
    serial.seed = parallel.seed = rng() % 3;
    parallel.jobs = 4;
    ExprManager m1, m2;
    auto fam = test::random_family(rng, 2 * n + 1, vars);
    auto head = [&](std::size_t k) { return std::vector<LabelingRule>(fam.begin(), fam.begin() + k); };
    CHECK(check_pi(m1, cnf, head(n + 1), serial).to_text() == check_pi(m2, cnf, head(n + 1), parallel).to_text());
    CHECK(check_sa(m1, cnf, head(n), serial).to_text() == check_sa(m2, cnf, head(n), parallel).to_text());
    CHECK(check_gsa(m1, cnf, head(n), serial).to_text() == check_gsa(m2, cnf, head(n), parallel).to_text());
    CHECK(check_sti(m1, cnf, fam, serial).to_text() == check_sti(m2, cnf, fam, parallel).to_text());
    Tree t = build_sti_tree(static_cast<unsigned>(n));
    CHECK(check_tree(m1, cnf, t, head(t.size()), serial).to_text() ==
          check_tree(m2, cnf, t, head(t.size()), parallel).to_text());
  }
}

TEST_CASE("obligations are decided correctly") {
  // Every verdict re-checked by the truth table.
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = 2 + rng() % 2;
    const unsigned vars = 3 + rng() % 5;
    auto cnf = test::random_unsat_cnf(rng, vars, 6 + rng() % 12, n);
    ExprManager m;
    auto r = check_sti(m, cnf, test::random_family(rng, 2 * n + 1, vars));
    for (const auto& ob : r.obligations) {
      CHECK(ob.holds == test::brute_force_implies(m.land(ob.lhs), ob.rhs, vars));
      if (!ob.holds) CHECK((eval(m.land(ob.lhs), ob.counter_model) && !eval(ob.rhs, ob.counter_model)));
    }
  }
}
