// One line per acceptance criterion; exit status 1 when any line fails.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "engine.hpp"
#include "error.hpp"
#include "generators.hpp"
#include "oracle.hpp"
#include "projection.hpp"
#include "sat/brute_force.hpp"
#include "sat/dimacs.hpp"
#include "sat/maxsat.hpp"
#include "sat/mus.hpp"
#include "sat/solver.hpp"
#include "version.hpp"

using namespace tmig;
using namespace tmig::testing;

namespace {

using Seconds = std::chrono::duration<double>;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string first_failure;

  void fail(const std::string& what) {
    if (pass) first_failure = what;
    pass = false;
  }
};

int failures = 0;

void report(const char* name, Outcome& o) {
  std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail.str();
  if (!o.pass) std::cout << " (first failure: " << o.first_failure << ")";
  std::cout << std::endl;
  if (!o.pass) ++failures;
}

const Encoding kFamily[] = {Encoding::P2, Encoding::P3, Encoding::P4, Encoding::P5Strict, Encoding::P5Pruned};

UniverseShape sweep_shape(std::size_t i, std::mt19937_64& rng) {
  UniverseShape s;
  s.packages = 1 + rng() % 10;
  s.dep_density = 0.2 + 0.15 * static_cast<double>(i % 5);
  s.conflict_density = std::array<double, 4>{0, 0.05, 0.1, 0.2}[(i / 5) % 4];
  return s;
}

std::vector<Universe> sweep(std::uint64_t seed, std::size_t count, bool disjoint) {
  std::mt19937_64 rng(seed);
  std::vector<Universe> out;
  for (std::size_t i = 0; i < count; ++i) {
    UniverseShape s = sweep_shape(i, rng);
    s.disjoint = disjoint;
    out.push_back(random_universe(rng, s));
  }
  return out;
}

void encoding_equivalence(const std::vector<Universe>& us) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::size_t mismatches = 0, solutions = 0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    const ClosureIndex idx(us[i]);
    const auto oracle = enumerate_admissible(us[i], {});
    solutions += oracle.size();
    for (Encoding e : kFamily) {
      if (projected_solutions(encode(e, idx, {})) != oracle) {
        ++mismatches;
        o.fail("universe " + std::to_string(i) + " under " + encoding_name(e));
      }
    }
  }
  const double secs = Seconds(std::chrono::steady_clock::now() - start).count();
  if (us.size() < 1000) o.fail("fewer than 1000 universes");
  if (secs > 600) o.fail("runtime above 10 minutes");
  o.detail << us.size() << " universes, " << solutions << " admissible sets, " << mismatches << " mismatches, "
           << secs << " s";
  report("encoding-equivalence", o);
}

void conflict_free_collapse(const std::vector<Universe>& sweep_us) {
  Outcome o;
  std::vector<const Universe*> us;
  for (const auto& u : sweep_us)
    if (!u.has_conflicts()) us.push_back(&u);
  std::mt19937_64 rng(0xc0ffee);
  std::vector<Universe> extra;
  for (std::size_t i = 0; i < 300; ++i) {
    UniverseShape s = sweep_shape(i, rng);
    s.conflict_density = 0;
    extra.push_back(random_universe(rng, s));
  }
  for (const auto& u : extra) us.push_back(&u);
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    const ClosureIndex idx(*us[i]);
    const auto p1 = projected_solutions(encode(Encoding::P1, idx, {}));
    const auto p5 = encode(Encoding::P5Pruned, idx, {});
    if (p5.atoms.inst_count() != 0) {
      ++mismatches;
      o.fail("pruned encoding allocated installation atoms in universe " + std::to_string(i));
    }
    if (p1 != enumerate_admissible(*us[i], {}) || p1 != projected_solutions(p5)) {
      ++mismatches;
      o.fail("solution sets differ in universe " + std::to_string(i));
    }
  }
  o.detail << us.size() << " conflict-free universes, " << mismatches << " mismatches";
  report("conflict-free-collapse", o);
}

std::optional<MigrationResult> try_solve(const ClosureIndex& idx, const MigrationRequest& req) {
  try {
    return solve_migration(idx, req);
  } catch (const Error& e) {
    if (e.code() == Errc::Unsolvable || e.code() == Errc::NoChangeCandidates) return std::nullopt;
    throw;
  }
}

void optimality(const std::vector<Universe>& disjoint, const std::vector<Universe>& overlap) {
  Outcome o;
  std::size_t solves = 0;
  for (std::size_t i = 0; i < disjoint.size(); ++i) {
    const Universe& u = disjoint[i];
    const ClosureIndex idx(u);
    const auto adm = enumerate_admissible(u, {});
    const auto best = brute_optimum(u, adm);
    const std::string at = "disjoint universe " + std::to_string(i);
    MigrationRequest req;
    const auto mx = try_solve(idx, req);
    ++solves;
    if (!mx || !mx->verification.ok() || mx->delta != best.max_delta) o.fail(at + " max");
    req.mode = Mode::MinNontrivial;
    const auto mn = try_solve(idx, req);
    ++solves;
    if (mn.has_value() != best.min_delta.has_value() || (mn && (mn->delta != *best.min_delta || !mn->verification.ok())))
      o.fail(at + " min");
    req.mode = Mode::Target;
    for (PkgId p = 0; p < u.size(); ++p) {
      if (!u.in_unstable(p) || u.in_testing(p)) continue;
      req.target = p;
      const auto want = brute_target(u, adm, p);
      const auto got = try_solve(idx, req);
      ++solves;
      if (got.has_value() != want.has_value() ||
          (got && (got->delta != *want || !contains(got->t_prime, p) || !got->verification.ok())))
        o.fail(at + " target " + u.label(p));
    }
  }
  // With T ∩ U ≠ ∅ the soft count is the optimised quantity; check it exactly.
  for (std::size_t i = 0; i < overlap.size(); ++i) {
    const Universe& u = overlap[i];
    const ClosureIndex idx(u);
    const auto best = brute_optimum(u, enumerate_admissible(u, {}));
    const auto mx = try_solve(idx, {});
    ++solves;
    if (!mx || !mx->verification.ok() || mx->optimum.satisfied != best.max_score)
      o.fail("overlapping universe " + std::to_string(i) + " soft optimum");
  }
  o.detail << disjoint.size() << " disjoint universes (max, min, target) and " << overlap.size()
           << " overlapping universes (soft optimum), " << solves << " solves";
  report("optimality", o);
}

void size_monotonicity(const std::vector<Universe>& us) {
  Outcome o;
  std::size_t reachable = 0, strict = 0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    const ClosureIndex idx(us[i]);
    std::vector<InstanceStats> s;
    for (Encoding e : kFamily) s.push_back(instance_stats(encode(e, idx, {})));
    for (std::size_t k = 1; k < s.size(); ++k)
      if (s[k].atoms() > s[k - 1].atoms() || s[k].clauses > s[k - 1].clauses)
        o.fail("universe " + std::to_string(i) + " grows at " + encoding_name(kFamily[k]));
    bool any = false;
    for (PkgId p = 0; p < us[i].size() && !any; ++p) any = !idx.relevant_conflicts(p).empty();
    if (!any) continue;
    ++reachable;
    const auto& p3 = s[1];
    const auto& p5 = s[4];
    if (p5.atoms() < p3.atoms() && p5.clauses < p3.clauses) ++strict;
  }
  if (reachable == 0 || 2 * strict < reachable) o.fail("strict reduction below half");
  o.detail << us.size() << " universes monotone; strict reduction in " << strict << " of " << reachable
           << " with a reachable conflict";
  report("size-monotonicity", o);
}

void closed_forms() {
  Outcome o;
  std::mt19937_64 rng(4242);
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int rep = 0; rep < 25; ++rep) {
      UniverseShape s;
      s.packages = n;
      s.dep_density = 0.2 + 0.2 * (rep % 4);
      s.conflict_density = 0.1 * (rep % 3);
      const Universe u = random_universe(rng, s);
      const ClosureIndex idx(u);
      const auto st = instance_stats(encode(Encoding::P2, idx, {}));
      std::size_t d = 0;
      for (PkgId c = 0; c < n; ++c)
        for (PkgId p = 0; p < n; ++p) d += u.deps(p).size();
      ++checked;
      if (st.atoms() != n + n * n) o.fail("atoms for n=" + std::to_string(n));
      if (st.family(Family::D) != d) o.fail("dependency clauses for n=" + std::to_string(n));
    }
  }
  o.detail << checked << " universes with n <= 8";
  report("p2-closed-forms", o);
}

void solver_cross_check() {
  Outcome o;
  std::mt19937_64 rng(777);
  std::size_t sat = 0, unsat = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto vars = static_cast<sat::Var>(1 + rng() % 16);
    const std::size_t n = rng() % 61;
    const sat::ClauseList all = random_cnf(rng, vars, n);
    const std::string at = "instance " + std::to_string(i);

    const auto r = sat::solve_sat(all, vars);
    const auto b = sat::brute_force_solve({vars, all, {}}, false);
    if (r.status != b.status) o.fail(at + " sat status");
    if (r.status == sat::Status::Sat && sat::first_violated(r.assignment, all)) o.fail(at + " sat model");
    (r.status == sat::Status::Sat ? sat : unsat)++;

    const std::size_t cut = n == 0 ? 0 : rng() % (n + 1);
    sat::Instance inst{vars, {}, {}};
    for (std::size_t k = 0; k < all.size(); ++k) (k < cut ? inst.hard : inst.soft).add(all[k]);
    const auto m = sat::solve_pmaxsat(inst);
    const auto bm = sat::brute_force_solve(inst, true);
    if ((m.status == sat::Status::Unsat) != (bm.status == sat::Status::Unsat)) o.fail(at + " maxsat status");
    if (m.status == sat::Status::Optimal) {
      if (m.satisfied_soft != bm.satisfied_soft) o.fail(at + " maxsat optimum");
      if (sat::first_violated(m.assignment, inst.hard) || sat::count_satisfied(m.assignment, inst.soft) != m.satisfied_soft)
        o.fail(at + " maxsat model");
    }
  }
  std::size_t cores = 0, verified = 0;
  while (cores < 500) {
    const auto vars = static_cast<sat::Var>(1 + rng() % 8);
    const sat::ClauseList cl = random_cnf(rng, vars, 10 + rng() % 51);
    if (sat::brute_force_solve({vars, cl, {}}, false).status != sat::Status::Unsat) continue;
    ++cores;
    const auto mus = sat::extract_mus(cl);
    sat::ClauseList core;
    for (std::size_t k : mus.core) core.add(cl[k]);
    bool ok = sat::verify_mus(cl, mus.core) && sat::brute_force_solve({vars, core, {}}, false).status == sat::Status::Unsat;
    for (std::size_t drop = 0; ok && drop < mus.core.size(); ++drop) {
      sat::ClauseList less;
      for (std::size_t k = 0; k < mus.core.size(); ++k)
        if (k != drop) less.add(cl[mus.core[k]]);
      ok = sat::brute_force_solve({vars, less, {}}, false).status == sat::Status::Sat;
    }
    if (ok) ++verified;
    else o.fail("core " + std::to_string(cores));
  }
  o.detail << "10000 instances (" << sat << " sat, " << unsat << " unsat) agree with enumeration; " << verified
           << " of " << cores << " cores minimal";
  report("solver-cross-check", o);
}

void version_table() {
  Outcome o;
  std::ifstream in(std::string(TMIG_FIXTURES) + "/version_order.txt");
  std::vector<std::string> order;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) order.push_back(line);
  if (order.size() < 30) o.fail("table has fewer than 30 entries");
  for (std::size_t i = 1; i < order.size(); ++i)
    if (!(compare_versions(order[i - 1], order[i]) < 0)) o.fail(order[i - 1] + " !< " + order[i]);
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    auto shuffled = order;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::sort(shuffled.begin(), shuffled.end(),
              [](const std::string& a, const std::string& b) { return compare_versions(a, b) < 0; });
    if (shuffled != order) o.fail("shuffle " + std::to_string(rep) + " sorts differently");
  }
  o.detail << order.size() << " versions in strict order";
  report("version-order", o);
}

void dimacs_round_trip(const std::vector<Universe>& us) {
  Outcome o;
  std::size_t count = 0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    const ClosureIndex idx(us[i]);
    for (Encoding e : kFamily) {
      sat::Instance inst = encode(e, idx, {}).instance();
      const sat::Instance hard_only = inst;
      inst.soft = soft_max(us[i]);
      const std::string at = "universe " + std::to_string(i) + " " + encoding_name(e);
      const std::string w = sat::emit_dimacs(inst, sat::DimacsKind::Wcnf);
      if (!(sat::parse_dimacs(w) == inst)) o.fail(at + " wcnf");
      if (!(sat::parse_dimacs(sat::emit_dimacs(hard_only, sat::DimacsKind::Cnf)) == hard_only)) o.fail(at + " cnf");
      std::istringstream lines(w);
      std::string header;
      std::getline(lines, header);
      const std::string top = std::to_string(inst.soft.size() + 1);
      if (header.substr(header.rfind(' ') + 1) != top) o.fail(at + " top weight");
      std::size_t hard_lines = 0;
      for (std::string l; std::getline(lines, l);) hard_lines += l.rfind(top + " ", 0) == 0 ? 1 : 0;
      if (hard_lines != inst.hard.size()) o.fail(at + " hard weights");
      ++count;
    }
  }
  o.detail << count << " instances round-tripped";
  report("dimacs-round-trip", o);
}

void end_to_end() {
  Outcome o;
  const std::string fixture = std::string(TMIG_FIXTURES) + "/upgrade";
  const std::string cmd = std::string(TMIG_BIN) + " migrate --testing " + fixture + "/testing --unstable " + fixture +
                          "/unstable --mode max";
  const auto start = std::chrono::steady_clock::now();
  FILE* f = popen(cmd.c_str(), "r");
  std::string out;
  if (f) {
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
  }
  const int status = f ? pclose(f) : -1;
  const double secs = Seconds(std::chrono::steady_clock::now() - start).count();
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (code != 0) o.fail("exit " + std::to_string(code));
  if (out.find("delta: 2\n") == std::string::npos) o.fail("delta");
  if (out.find("verified: yes") == std::string::npos) o.fail("verification");
  if (out.find("hints:\neasy a/2\n") == std::string::npos) o.fail("hints");
  if (secs >= 1) o.fail("took " + std::to_string(secs) + " s");
  o.detail << "exit " << code << ", " << secs << " s";
  report("end-to-end", o);
}

}  // namespace

int main() {
  try {
    const auto overlap = sweep(2026, 1000, false);
    const auto disjoint = sweep(1019, 1000, true);
    encoding_equivalence(overlap);
    conflict_free_collapse(overlap);
    optimality(disjoint, overlap);
    size_monotonicity(overlap);
    closed_forms();
    solver_cross_check();
    version_table();
    dimacs_round_trip(overlap);
    end_to_end();
  } catch (const std::exception& e) {
    std::cout << "FAIL aborted: " << e.what() << std::endl;
    return 1;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
