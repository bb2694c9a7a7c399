#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <optional>

#include "itp/collectives.hpp"
#include "itp/constraints.hpp"
#include "itp/interpolate.hpp"
#include "itp/tracecheck.hpp"

namespace itp::cli {

namespace {

struct Flags {
  std::string cnf, proof, config, labeling, family, collective, tree, dump_proof;
  std::uint64_t seed = 0;
  int jobs = 1;
  bool quiet = false;
};

Configuration config_flag(const std::string& text) {
  if (text.rfind("A=", 0) != 0) throw UsageError("--config expects A=<comma list>, got '" + text + "'");
  return parse_configuration(std::string_view(text).substr(2));
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

// Supplied proof (validated) or a fresh refutation; NotUnsat when satisfiable.
ResolutionProof obtain_proof(const Flags& fl, const PartitionedCnf& cnf) {
  if (!fl.proof.empty()) {
    ResolutionProof p = read_tracecheck_file(fl.proof, cnf);
    if (auto e = validate_proof(p, cnf)) throw *e;
    return p;
  }
  SolveResult r = solve(cnf, {.seed = fl.seed});
  if (r.is_sat()) throw NotUnsat(r.model().to_string());
  return r.proof();
}

int cmd_solve(const Flags& fl, std::ostream& out) {
  auto cnf = read_dimacs_file(fl.cnf);
  SolveResult r = solve(cnf, {.seed = fl.seed, .log_proof = !fl.dump_proof.empty()});
  if (r.is_sat()) {
    out << "SAT " << r.model().to_string() << '\n';
  } else {
    out << "UNSAT\n";
    if (!fl.dump_proof.empty()) write_file(fl.dump_proof, write_tracecheck(r.proof(), &cnf));
  }
  const auto& s = r.stats();
  out << "c decisions " << s.decisions << " propagations " << s.propagations << " conflicts " << s.conflicts
      << " restarts " << s.restarts << '\n';
  return 0;
}

int cmd_prove_dump(const Flags& fl, std::ostream& out) {
  auto cnf = read_dimacs_file(fl.cnf);
  std::string text = write_tracecheck(obtain_proof(fl, cnf), &cnf);
  if (fl.dump_proof.empty())
    out << text;
  else
    write_file(fl.dump_proof, text);
  return 0;
}

int cmd_import_proof(const Flags& fl, std::ostream& out) {
  if (fl.proof.empty()) throw UsageError("import-proof needs --proof");
  auto cnf = read_dimacs_file(fl.cnf);
  ResolutionProof p = read_tracecheck_file(fl.proof, cnf);
  if (!fl.dump_proof.empty()) write_file(fl.dump_proof, write_tracecheck(p, &cnf));
  if (auto e = validate_proof(p, cnf, {.require_refutation = false})) {
    out << "INVALID " << to_string(e->kind()) << ": " << e->what() << '\n';
    return 1;
  }
  const bool refutation = p.node(p.root()).clause.empty();
  out << (refutation ? "REFUTATION " : "DERIVATION ") << p.size() << " nodes\n";
  return refutation ? 0 : 1;
}

int cmd_interpolate(const Flags& fl, std::ostream& out) {
  if (fl.config.empty()) throw UsageError("interpolate needs --config A=<parts>");
  auto cnf = read_dimacs_file(fl.cnf);
  LabelingSpec spec{parse_labeling(fl.labeling.empty() ? "M" : fl.labeling), config_flag(fl.config)};
  for (std::size_t k : spec.config.a_parts)
    if (k > cnf.num_partitions()) throw RangeError("configuration names partition " + std::to_string(k));
  ResolutionProof proof = obtain_proof(fl, cnf);
  ExprManager mgr;
  out << to_sexpr(interpolate(mgr, proof, cnf, spec)) << '\n';
  return 0;
}

std::vector<LabelingRule> family_flag(const Flags& fl) {
  if (fl.family.empty()) throw UsageError("--family is required");
  return parse_family(fl.family);
}

int cmd_check(const Flags& fl, std::ostream& out) {
  auto kind = parse_collective(fl.collective);
  auto cnf = read_dimacs_file(fl.cnf);
  auto family = family_flag(fl);
  std::optional<ResolutionProof> proof;
  if (!fl.proof.empty()) proof = obtain_proof(fl, cnf);
  CheckOptions opts{.seed = fl.seed, .jobs = fl.jobs, .proof = proof ? &*proof : nullptr};
  ExprManager mgr;
  CollectiveReport r;
  switch (kind) {
  case CollectiveKind::PI: r = check_pi(mgr, cnf, family, opts); break;
  case CollectiveKind::SA: r = check_sa(mgr, cnf, family, opts); break;
  case CollectiveKind::BGSA: r = check_bgsa(mgr, cnf, family, opts); break;
  case CollectiveKind::GSA: r = check_gsa(mgr, cnf, family, opts); break;
  case CollectiveKind::STI: r = check_sti(mgr, cnf, family, opts); break;
  case CollectiveKind::Tree:
    if (fl.tree.empty()) throw UsageError("--collective tree needs --tree");
    r = check_tree(mgr, cnf, read_tree_file(fl.tree), family, opts);
    break;
  case CollectiveKind::Symmetry: throw UsageError("symmetry is not a --collective");
  }
  out << r.to_text(!fl.quiet);
  return r.holds() ? 0 : 1;
}

int cmd_predict(const Flags& fl, std::ostream& out) {
  auto kind = parse_collective(fl.collective);
  auto cnf = read_dimacs_file(fl.cnf);
  auto family = family_flag(fl);
  std::optional<Tree> tree;
  if (kind == CollectiveKind::Tree) {
    if (fl.tree.empty()) throw UsageError("--collective tree needs --tree");
    tree = read_tree_file(fl.tree);
  }
  Prediction p = predict(kind, cnf, family, tree ? &*tree : nullptr);
  out << (p.will_hold ? "WILLHOLD" : "WILLFAIL") << '\n';
  for (const Violation& v : p.witnesses) out << v.to_string() << '\n';
  return p.will_hold ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interpolation toolkit: proofs, labeled interpolation and collective checks"};
  app.require_subcommand(1);
  Flags fl;
  auto add_cnf = [&](CLI::App* c) { c->add_option("--cnf", fl.cnf, "partitioned DIMACS input")->required(); };
  auto add_seed = [&](CLI::App* c) { c->add_option("--seed", fl.seed, "solver seed"); };
  auto add_proof = [&](CLI::App* c) { c->add_option("--proof", fl.proof, "TraceCheck refutation to use"); };

  auto* solve_cmd = app.add_subcommand("solve", "decide satisfiability");
  add_cnf(solve_cmd);
  add_seed(solve_cmd);
  solve_cmd->add_option("--dump-proof", fl.dump_proof, "write the refutation (TraceCheck)");

  auto* itp_cmd = app.add_subcommand("interpolate", "interpolant for one configuration");
  add_cnf(itp_cmd);
  add_seed(itp_cmd);
  add_proof(itp_cmd);
  itp_cmd->add_option("--config", fl.config, "A=<comma list of A partitions>");
  itp_cmd->add_option("--labeling", fl.labeling, "M | P | M' | var:<v>=<label>,...");

  auto* check_cmd = app.add_subcommand("check", "check a collective on one refutation");
  add_cnf(check_cmd);
  add_seed(check_cmd);
  add_proof(check_cmd);
  check_cmd->add_option("--collective", fl.collective, "pi | sa | bgsa | gsa | sti | tree")->required();
  check_cmd->add_option("--family", fl.family, "comma list of labelings, one per slot");
  check_cmd->add_option("--tree", fl.tree, "tree file for --collective tree");
  check_cmd->add_option("--jobs", fl.jobs, "worker threads (1 = serial)")->check(CLI::PositiveNumber);
  check_cmd->add_flag("--quiet", fl.quiet, "only OBLIGATION lines");

  auto* predict_cmd = app.add_subcommand("predict", "decide a collective from the labels alone");
  add_cnf(predict_cmd);
  predict_cmd->add_option("--collective", fl.collective, "pi | sa | bgsa | gsa | sti | tree")->required();
  predict_cmd->add_option("--family", fl.family, "comma list of labelings, one per slot");
  predict_cmd->add_option("--tree", fl.tree, "tree file for --collective tree");

  auto* dump_cmd = app.add_subcommand("prove-dump", "solve and print the refutation (TraceCheck)");
  add_cnf(dump_cmd);
  add_seed(dump_cmd);
  add_proof(dump_cmd);
  dump_cmd->add_option("--dump-proof", fl.dump_proof, "write here instead of stdout");

  auto* import_cmd = app.add_subcommand("import-proof", "read and validate a TraceCheck proof");
  add_cnf(import_cmd);
  add_proof(import_cmd);
  import_cmd->add_option("--dump-proof", fl.dump_proof, "re-export the imported proof");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::Success&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*solve_cmd) return cmd_solve(fl, out);
    if (*itp_cmd) return cmd_interpolate(fl, out);
    if (*check_cmd) return cmd_check(fl, out);
    if (*predict_cmd) return cmd_predict(fl, out);
    if (*dump_cmd) return cmd_prove_dump(fl, out);
    if (*import_cmd) return cmd_import_proof(fl, out);
  } catch (const NotUnsat& e) {
    out << "SAT " << e.model() << '\n';
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

} // namespace itp::cli
