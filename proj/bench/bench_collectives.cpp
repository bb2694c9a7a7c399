// Serial reference vs OpenMP collective checks on random 3-CNF refutations.
// usage: bench_collectives [instances] [vars] [jobs]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <omp.h>
#include <random>

#include "itp/collectives.hpp"

using namespace itp;

namespace {

PartitionedCnf random_unsat(std::mt19937_64& rng, unsigned vars, std::size_t parts) {
  std::uniform_int_distribution<unsigned> var(1, vars);
  for (;;) {
    std::vector<std::vector<Clause>> cls(parts);
    const unsigned clauses = vars * 5;
    for (unsigned i = 0; i < clauses; ++i) {
      std::vector<Lit> lits;
      while (lits.size() < 3) {
        Lit l(Var(var(rng)), rng() & 1u);
        bool dup = false;
        for (Lit x : lits) dup = dup || x.var() == l.var();
        if (!dup) lits.push_back(l);
      }
      // contiguous blocks keep partitions loosely coupled
      cls[i * parts / clauses].push_back(Clause(std::move(lits)));
    }
    PartitionedCnf cnf(vars, std::move(cls));
    if (!solve(cnf, {.log_proof = false}).is_sat()) return cnf;
  }
}

} // namespace

int main(int argc, char** argv) {
  const int instances = argc > 1 ? std::atoi(argv[1]) : 8;
  const unsigned vars = argc > 2 ? static_cast<unsigned>(std::atoi(argv[2])) : 60;
  const int jobs = argc > 3 ? std::atoi(argv[3]) : std::max(2, omp_get_max_threads());
  const std::size_t n = 6;

  std::mt19937_64 rng(1);
  double serial = 0, parallel = 0;
  std::size_t slots = 0;
  bool same = true;
  for (int i = 0; i < instances; ++i) {
    auto cnf = random_unsat(rng, vars, n);
    auto proof = solve(cnf).proof();
    std::vector<LabelingRule> family;
    for (std::size_t k = 0; k < 2 * n + 1; ++k) family.push_back(k % 2 ? pudlak() : mcmillan());

    CheckOptions o;
    o.proof = &proof;
    ExprManager m1, m2;
    auto t0 = std::chrono::steady_clock::now();
    auto a = check_sti(m1, cnf, family, o);
    auto t1 = std::chrono::steady_clock::now();
    o.jobs = jobs;
    auto b = check_sti(m2, cnf, family, o);
    auto t2 = std::chrono::steady_clock::now();
    serial += std::chrono::duration<double>(t1 - t0).count();
    parallel += std::chrono::duration<double>(t2 - t1).count();
    same = same && a.to_text() == b.to_text();
    slots += a.slots.size();
    std::printf("instance %d: proof %zu nodes, serial %.1fms, %d jobs %.1fms\n", i, proof.size(),
                std::chrono::duration<double>(t1 - t0).count() * 1e3, jobs,
                std::chrono::duration<double>(t2 - t1).count() * 1e3);
  }
  std::printf("sti checks: %d instances, %zu slots, serial %.1fms, parallel(%d) %.1fms, speedup %.2fx, reports %s\n",
              instances, slots, serial * 1e3, jobs, parallel * 1e3, serial / parallel, same ? "identical" : "DIFFER");
  return same ? 0 : 1;
}
