#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "tmig/tmig.h"

namespace {

enum Exit { kOk = 0, kError = 1, kUnsolvable = 2, kTimeout = 3, kViolations = 4 };

struct Config {
  std::string testing;
  std::string unstable;
  std::string mode = "max";
  std::string target;
  std::string encoding = "p5";
  std::string policy;
  std::string solver;
  double timeout = 300;
  std::string format = "text";
  std::size_t p2_bound = 10;
  bool abort_untrimmed = false;
  std::size_t all_deltas = 0;
  std::string out;
  std::string kind = "wcnf";
  std::string package;
};

int exit_for(tmig_status s) {
  switch (s) {
    case TMIG_OK: return kOk;
    case TMIG_E_UNSOLVABLE: return kUnsolvable;
    case TMIG_E_TIMEOUT: return kTimeout;
    default: return kError;
  }
}

int fail(tmig_status s) {
  std::cerr << "tmig: " << tmig_status_name(s) << ": " << tmig_last_error() << "\n";
  return exit_for(s);
}

void add_inputs(CLI::App* sub, Config& c) {
  sub->add_option("--testing", c.testing, "Packages file of the testing repository")->required();
  sub->add_option("--unstable", c.unstable, "Packages file of the unstable repository")->required();
  sub->add_option("--policy", c.policy, "Policy rules file");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "structured"}));
}

void add_solving(CLI::App* sub, Config& c) {
  sub->add_option("--encoding", c.encoding, "Clause encoding")
      ->check(CLI::IsMember({"p1", "p3", "p4", "p5", "p5-strict", "p2-oracle"}));
  sub->add_option("--solver", c.solver, "External MaxSAT solver command (receives a WCNF file)");
  sub->add_option("--timeout", c.timeout, "Solver budget in seconds (0: unlimited)");
  sub->add_option("--p2-bound", c.p2_bound, "Largest universe accepted by p2-oracle");
}

tmig_options options_of(const Config& c) {
  tmig_options o;
  tmig_options_init(&o);
  o.mode = c.mode == "min" ? TMIG_MODE_MIN : c.mode == "target" ? TMIG_MODE_TARGET : TMIG_MODE_MAX;
  o.target = c.target.empty() ? nullptr : c.target.c_str();
  o.encoding = c.encoding.c_str();
  o.policy_path = c.policy.empty() ? nullptr : c.policy.c_str();
  o.solver = c.solver.empty() ? nullptr : c.solver.c_str();
  o.timeout = c.timeout;
  o.p2_bound = c.p2_bound;
  o.abort_on_untrimmed = c.abort_untrimmed ? 1 : 0;
  o.alternatives = c.all_deltas;
  return o;
}

tmig_format format_of(const Config& c) { return c.format == "structured" ? TMIG_FORMAT_STRUCTURED : TMIG_FORMAT_TEXT; }

void print_owned(char* s) {
  std::fputs(s, stdout);
  tmig_string_free(s);
}

bool write_file(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  return static_cast<bool>(out);
}

int run_migrate(const tmig_universe* u, const Config& c) {
  const tmig_options o = options_of(c);
  tmig_result* r = nullptr;
  if (auto s = tmig_migrate(u, &o, &r); s != TMIG_OK) return fail(s);
  char* text = nullptr;
  const tmig_status s = tmig_result_render(r, format_of(c), &text);
  const bool verified = tmig_result_verified(r) != 0;
  tmig_result_free(r);
  if (s != TMIG_OK) return fail(s);
  print_owned(text);
  if (!verified) {
    std::cerr << "tmig: solver result failed independent verification\n";
    return kError;
  }
  return kOk;
}

int run_explain(const tmig_universe* u, Config c) {
  c.target = c.package;
  const tmig_options o = options_of(c);
  char* text = nullptr;
  int migrates = 0;
  if (auto s = tmig_explain(u, &o, format_of(c), &text, &migrates); s != TMIG_OK) return fail(s);
  print_owned(text);
  return kOk;
}

int run_check(const tmig_universe* u, const Config& c) {
  char* text = nullptr;
  int clean = 0;
  if (auto s = tmig_check(u, format_of(c), &text, &clean); s != TMIG_OK) return fail(s);
  print_owned(text);
  return clean ? kOk : kViolations;
}

int run_stats(const tmig_universe* u, const Config& c) {
  const tmig_options o = options_of(c);
  char* text = nullptr;
  if (auto s = tmig_stats(u, &o, format_of(c), &text); s != TMIG_OK) return fail(s);
  print_owned(text);
  return kOk;
}

int run_emit(const tmig_universe* u, const Config& c, bool mode_given) {
  const bool cnf = c.kind == "cnf";
  if (cnf && mode_given) {
    std::cerr << "tmig: cnf output cannot carry the soft clauses of an objective; use --kind wcnf\n";
    return kError;
  }
  const tmig_options o = options_of(c);
  char* dimacs = nullptr;
  char* map = nullptr;
  if (auto s = tmig_emit(u, &o, cnf ? TMIG_DIMACS_CNF : TMIG_DIMACS_WCNF, cnf ? 0 : 1, &dimacs, &map); s != TMIG_OK)
    return fail(s);
  const bool ok = write_file(c.out, dimacs) && write_file(c.out + ".map", map);
  tmig_string_free(dimacs);
  tmig_string_free(map);
  if (!ok) {
    std::cerr << "tmig: cannot write " << c.out << "\n";
    return kError;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Testing-migration planner: computes admissible repository migrations with a SAT/MaxSAT encoding"};
  app.require_subcommand(1);
  Config c;

  auto* migrate = app.add_subcommand("migrate", "Compute a migration and hints");
  add_inputs(migrate, c);
  add_solving(migrate, c);
  migrate->add_option("--mode", c.mode, "Objective")->check(CLI::IsMember({"max", "min", "target"}));
  migrate->add_option("--target", c.target, "Package to migrate in target mode (name/version)");
  migrate->add_flag("--abort-untrimmed", c.abort_untrimmed, "Fail when testing is not unique and trimmed");
  migrate->add_option("--all-deltas", c.all_deltas, "Also report up to N alternative solutions");

  auto* explain = app.add_subcommand("explain", "Explain why a package cannot migrate");
  add_inputs(explain, c);
  add_solving(explain, c);
  explain->add_option("package", c.package, "name/version")->required();

  auto* check = app.add_subcommand("check", "Verify that testing is unique and trimmed");
  add_inputs(check, c);

  auto* stats = app.add_subcommand("stats", "Report closure and encoding sizes");
  add_inputs(stats, c);
  stats->add_option("--p2-bound", c.p2_bound, "Largest universe included in the p2-oracle row");

  auto* emit = app.add_subcommand("emit", "Write the instance as DIMACS plus an atom map");
  add_inputs(emit, c);
  add_solving(emit, c);
  auto* emit_mode = emit->add_option("--mode", c.mode, "Objective")->check(CLI::IsMember({"max", "min", "target"}));
  emit->add_option("--target", c.target, "Package to migrate in target mode (name/version)");
  emit->add_option("--kind", c.kind, "DIMACS flavour")->check(CLI::IsMember({"cnf", "wcnf"}));
  emit->add_option("--out", c.out, "Output path; the atom map goes to <out>.map")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kError;
  }

  tmig_universe* u = nullptr;
  if (auto s = tmig_universe_load(c.testing.c_str(), c.unstable.c_str(), &u); s != TMIG_OK) return fail(s);
  int rc = kError;
  if (migrate->parsed())
    rc = run_migrate(u, c);
  else if (explain->parsed())
    rc = run_explain(u, c);
  else if (check->parsed())
    rc = run_check(u, c);
  else if (stats->parsed())
    rc = run_stats(u, c);
  else if (emit->parsed())
    rc = run_emit(u, c, emit_mode->count() > 0);
  tmig_universe_free(u);
  return rc;
}
