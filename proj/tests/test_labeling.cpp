#include <doctest.h>

#include "itp/labeling.hpp"
#include "itp/tracecheck.hpp"

using namespace itp;

namespace {
const char* kBgsa3 = "p cnf 4 5\nc part 1\n1 -2 0\n3 0\nc part 2\n-1 -3 0\n2 0\nc part 3\n4 0\n";
const char* kP1 = "1 1 -2 0 0\n2 -1 -3 0 0\n3 3 0 0\n4 2 0 0\n5 -2 -3 0 1 2 0\n6 -2 0 5 3 0\n7 0 6 4 0\n";
const Label kAll[] = {Label::b, Label::ab, Label::a};
} // namespace

TEST_CASE("label order and join") {
  CHECK(leq(Label::b, Label::ab));
  CHECK(leq(Label::ab, Label::a));
  CHECK(leq(Label::b, Label::a));
  CHECK_FALSE(leq(Label::a, Label::ab));
  CHECK(join(Label::a, Label::b) == Label::ab);
  CHECK(join(Label::a, Label::ab) == Label::ab);
  CHECK(join(Label::b, Label::ab) == Label::ab);
  for (Label x : kAll) {
    CHECK(join(x, x) == x);
    for (Label y : kAll) {
      CHECK(join(x, y) == join(y, x));
      for (Label z : kAll) CHECK(join(join(x, y), z) == join(x, join(y, z)));
      // least upper bound in the lattice where ab sits above a and b
      auto above = [](Label u, Label w) { return u == w || u == Label::ab; };
      CHECK(above(join(x, y), x));
      CHECK(above(join(x, y), y));
      for (Label u : kAll)
        if (above(u, x) && above(u, y)) CHECK(above(u, join(x, y)));
    }
  }
}

TEST_CASE("variable classes come from the formula") {
  auto cnf = parse_dimacs(kBgsa3);
  CHECK(var_class(Var(1), cnf, Configuration{{1}}) == VarClass::AB);
  CHECK(var_class(Var(4), cnf, Configuration{{1}}) == VarClass::B);
  CHECK(var_class(Var(4), cnf, Configuration{{1, 2}}) == VarClass::B);
  CHECK(var_class(Var(2), cnf, Configuration{{1, 2}}) == VarClass::A);
  auto padded = parse_dimacs("p cnf 3 2\nc part 1\n1 2 0\nc part 2\n-1 3 0\nc part 3\n");
  CHECK(var_class(Var(1), padded, Configuration{{1, 3}}) == VarClass::AB);
  CHECK(var_class(Var(3), padded, Configuration{{3}}) == VarClass::B);
  CHECK_THROWS_AS(var_class(Var(3), parse_dimacs("p cnf 3 1\nc part 1\n1 0\n"), Configuration{{1}}), UnknownVar);
}

TEST_CASE("resolve_label") {
  auto cnf = parse_dimacs(kBgsa3);
  Configuration a1{{1}};
  CHECK(resolve_label({mcmillan_prime(), a1}, cnf, 0, Var(1)) == Label::a);
  CHECK(resolve_label({mcmillan(), a1}, cnf, 0, Var(1)) == Label::b);
  CHECK(resolve_label({pudlak(), a1}, cnf, 0, Var(1)) == Label::ab);
  CHECK(resolve_label({mcmillan(), Configuration{{1, 2}}}, cnf, 0, Var(2)) == Label::a); // class A
  CHECK(resolve_label({mcmillan_prime(), a1}, cnf, 0, Var(4)) == Label::b);             // class B
  LabelingSpec partial{PerVariable{{{1, Label::ab}}, std::nullopt}, a1};
  CHECK(resolve_label(partial, cnf, 0, Var(1)) == Label::ab);
  CHECK_THROWS_AS(resolve_label(partial, cnf, 0, Var(2)), SpecIncomplete);
  LabelingSpec occ{PerOccurrence{{{{0, 1}, Label::a}}}, a1};
  CHECK(resolve_label(occ, cnf, 0, Var(1)) == Label::a);
  CHECK_THROWS_AS(resolve_label(occ, cnf, 1, Var(1)), SpecIncomplete);
}

TEST_CASE("compare_labelings") {
  auto cnf = parse_dimacs(kBgsa3);
  auto proof = import_tracecheck(kP1, cnf);
  Configuration c{{1}};
  CHECK(compare_labelings({mcmillan(), c}, {pudlak(), c}, proof, cnf) == Ordering::LEQ);
  CHECK(compare_labelings({pudlak(), c}, {mcmillan_prime(), c}, proof, cnf) == Ordering::LEQ);
  CHECK(compare_labelings({mcmillan_prime(), c}, {mcmillan(), c}, proof, cnf) == Ordering::GEQ);
  CHECK(compare_labelings({pudlak(), c}, {pudlak(), c}, proof, cnf) == Ordering::EQ);
  LabelingSpec x{PerVariable{{{1, Label::a}, {2, Label::b}}, Label::ab}, c};
  LabelingSpec y{PerVariable{{{1, Label::b}, {2, Label::a}}, Label::ab}, c};
  CHECK(compare_labelings(x, y, proof, cnf) == Ordering::INCOMPARABLE);
  CHECK_THROWS_AS(compare_labelings({mcmillan(), c}, {mcmillan(), Configuration{{2}}}, proof, cnf),
                  ConfigMismatch);
}

TEST_CASE("labeling syntax") {
  CHECK(parse_labeling("M") == mcmillan());
  CHECK(parse_labeling("P") == pudlak());
  CHECK(parse_labeling("M'") == mcmillan_prime());
  auto pv = std::get<PerVariable>(parse_labeling("var:1=a,3=ab,*=b"));
  CHECK(pv.labels.at(1) == Label::a);
  CHECK(pv.labels.at(3) == Label::ab);
  CHECK(pv.fallback == Label::b);
  CHECK(to_string(parse_labeling("var:1=a,3=ab,*=b")) == "var:1=a,3=ab,*=b");
  CHECK_THROWS_AS(parse_labeling("Q"), UsageError);
  CHECK_THROWS_AS(parse_labeling("var:1=c"), UsageError);
  CHECK_THROWS_AS(parse_labeling("var:x=a"), UsageError);
}

TEST_CASE("family syntax") {
  auto f = parse_family("M',M',M");
  REQUIRE(f.size() == 3);
  CHECK(f[0] == mcmillan_prime());
  CHECK(f[2] == mcmillan());
  auto g = parse_family("M,var:1=a,2=b,P");
  REQUIRE(g.size() == 3);
  CHECK(std::get<PerVariable>(g[1]).labels.size() == 2);
  auto h = parse_family("var:1=a,2=b;P");
  REQUIRE(h.size() == 2);
  CHECK_THROWS_AS(parse_family("1=a,M"), UsageError);
}

TEST_CASE("configuration syntax") {
  CHECK(parse_configuration("1,3").a_parts == std::set<std::size_t>{1, 3});
  CHECK(parse_configuration("").a_parts.empty());
  CHECK(parse_configuration("2").to_string() == "{2}");
  CHECK_THROWS_AS(parse_configuration("0"), UsageError);
}
