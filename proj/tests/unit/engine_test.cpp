#include <doctest.h>

#include <random>

#include "error.hpp"
#include "generators.hpp"
#include "oracle.hpp"
#include "report.hpp"
#include "text_universe.hpp"

using namespace tmig;
using namespace tmig::testing;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::Io;
}

bool mentions(const std::vector<std::string>& lines, const std::string& needle) {
  return std::any_of(lines.begin(), lines.end(), [&](const std::string& l) { return l.find(needle) != std::string::npos; });
}

std::string solver(const char* name) { return std::string(TMIG_FIXTURES) + "/solvers/" + name; }

const std::string kUpgradeT = "Package: a\nVersion: 1\n";
const std::string kUpgradeU = "Package: a\nVersion: 2\n";

}  // namespace

TEST_CASE("a version bump migrates with delta two") {
  const Universe u = universe_of(kUpgradeT, kUpgradeU);
  const ClosureIndex idx(u);
  for (Encoding e : {Encoding::P2, Encoding::P3, Encoding::P4, Encoding::P5Strict, Encoding::P5Pruned}) {
    MigrationRequest req;
    req.encoding = e;
    const auto r = solve_migration(idx, req);
    CHECK(r.t_prime == pkgs(u, {"a/2"}));
    CHECK(r.delta == 2);
    CHECK(r.optimum.satisfied == 2);
    CHECK(r.optimum.total == 2);
    CHECK(r.verification.ok());
    CHECK(render_hints(u, r) == "easy a/2\n");
  }
}

TEST_CASE("identical repositories keep testing") {
  const Universe u = universe_of(kUpgradeT, kUpgradeT);
  const ClosureIndex idx(u);
  const auto r = solve_migration(idx, {});
  CHECK(r.t_prime == pkgs(u, {"a/1"}));
  CHECK(r.delta == 0);
  CHECK(render_hints(u, r).empty());
}

TEST_CASE("a blocked upgrade drops the old version") {
  const Universe u = universe_of(kUpgradeT, "Package: a\nVersion: 2\nDepends: nosuch\n");
  const ClosureIndex idx(u);
  const auto r = solve_migration(idx, {});
  CHECK(r.t_prime.empty());
  CHECK(r.optimum.satisfied == 1);
  CHECK(r.delta == 1);
  CHECK(render_hints(u, r) == "remove a/1\n");
}

TEST_CASE("decode ignores installation atoms") {
  const Universe u = universe_of("Package: a\nVersion: 1\n");
  const ClosureIndex idx(u);
  const auto ep = encode(Encoding::P3, idx, {});
  sat::Assignment a(ep.atoms.num_vars());
  CHECK(decode_solution(a, ep.atoms).empty());
  a.set(2, true);
  CHECK(decode_solution(a, ep.atoms).empty());
  a.set(1, true);
  CHECK(decode_solution(a, ep.atoms) == PackageSet{0});
}

TEST_CASE("hints") {
  const Universe u = universe_of("Package: a\nVersion: 1\n\nPackage: b\nVersion: 1\n",
                                 "Package: a\nVersion: 2\n\nPackage: c\nVersion: 1\n");
  MigrationResult r;
  r.t_prime = pkgs(u, {"a/2", "c/1"});
  r.migrated_in = pkgs(u, {"a/2", "c/1"});
  r.removed = pkgs(u, {"a/1", "b/1"});
  CHECK(render_hints(u, r) == "easy a/2 c/1\nremove b/1\n");
  r.verification.kind = Verdict::Kind::Trimmedness;
  CHECK(code_of([&] { render_hints(u, r); }) == Errc::RefuseUnverified);
  CHECK(render_hints(u, MigrationResult{}).empty());
}

TEST_CASE("explanations") {
  SUBCASE("missing dependency") {
    const Universe u = universe_of("", "Package: p\nVersion: 1\nDepends: q\n");
    const ClosureIndex idx(u);
    MigrationRequest req;
    req.mode = Mode::Target;
    req.target = pkg(u, "p/1");
    const auto ex = explain_non_migration(idx, req);
    CHECK(mentions(ex.lines, "p/1 is requested to migrate"));
    CHECK(mentions(ex.lines, "p/1 depends on q"));
    CHECK(ex.lines.size() == 2);
  }
  SUBCASE("conflict pair") {
    const Universe u = universe_of("Package: q\nVersion: 1\nConflicts: r\n\nPackage: r\nVersion: 1\n",
                                   "Package: p\nVersion: 2\nDepends: q, r\n\nPackage: p\nVersion: 1\n");
    const ClosureIndex idx(u);
    MigrationRequest req;
    req.mode = Mode::Target;
    req.target = pkg(u, "p/2");
    for (Encoding e : {Encoding::P3, Encoding::P4, Encoding::P5Strict, Encoding::P5Pruned}) {
      req.encoding = e;
      const auto ex = explain_non_migration(idx, req);
      CHECK(mentions(ex.lines, "q/1 conflicts with r/1"));
      CHECK(std::find(ex.families.begin(), ex.families.end(), Family::C) != ex.families.end());
    }
  }
  SUBCASE("migratable") {
    const Universe u = universe_of(kUpgradeT, kUpgradeU);
    const ClosureIndex idx(u);
    MigrationRequest req;
    req.mode = Mode::Target;
    req.target = pkg(u, "a/2");
    CHECK(code_of([&] { explain_non_migration(idx, req); }) == Errc::ActuallySolvable);
  }
}

TEST_CASE("testing diagnosis") {
  const Universe u = universe_of(
      "Package: a\nVersion: 1\n\nPackage: a\nVersion: 2\n\nPackage: b\nVersion: 1\nDepends: nosuch\n");
  const ClosureIndex idx(u);
  const auto d = diagnose_testing(idx);
  CHECK(d.duplicates.size() == 1);
  CHECK(d.uninstallable == pkgs(u, {"b/1"}));
  const auto why = explain_uninstallable(idx, pkg(u, "b/1"), u.testing());
  CHECK(mentions(why, "no candidate"));

  MigrationRequest req;
  req.abort_on_untrimmed = true;
  CHECK(code_of([&] { solve_migration(idx, req); }) == Errc::UntrimmedTesting);
  req.abort_on_untrimmed = false;
  const auto r = solve_migration(idx, req);
  CHECK(r.verification.ok());
  CHECK(r.testing.uninstallable.size() == 1);
}

TEST_CASE("policy that forbids everything is unsolvable") {
  const Universe u = universe_of(kUpgradeT, kUpgradeU);
  const ClosureIndex idx(u);
  MigrationRequest req;
  req.policy = parse_policy("clause: a/1 a/2\nclause: -a/1\nclause: -a/2\n", u);
  CHECK(code_of([&] { solve_migration(idx, req); }) == Errc::Unsolvable);
}

TEST_CASE("policy group keeps packages together") {
  const Universe u = universe_of("Package: a\nVersion: 1\n\nPackage: b\nVersion: 1\n",
                                 "Package: a\nVersion: 2\n\nPackage: b\nVersion: 2\nDepends: nosuch\n");
  const ClosureIndex idx(u);
  MigrationRequest req;
  const auto free = solve_migration(idx, req);
  CHECK(contains(free.t_prime, pkg(u, "a/2")));
  req.policy = parse_policy("group: a/2 b/2\n", u);
  const auto grouped = solve_migration(idx, req);
  CHECK_FALSE(contains(grouped.t_prime, pkg(u, "a/2")));
  CHECK(grouped.verification.ok());
}

TEST_CASE("structured document round trip") {
  const Universe u = universe_of(kUpgradeT, kUpgradeU);
  const ClosureIndex idx(u);
  const auto r = solve_migration(idx, {});
  const ResultDocument doc = make_document(u, r, {});
  CHECK(doc.hints == std::vector<std::string>{"easy a/2"});
  CHECK(read_document(write_document(doc)) == doc);
  CHECK(code_of([] { read_document("{\"t_prime\": 3}"); }) == Errc::InvalidArgument);
  CHECK(code_of([] { read_document("not json"); }) == Errc::InvalidArgument);
}

TEST_CASE("external solvers") {
  const Universe u = universe_of(kUpgradeT, kUpgradeU);
  const ClosureIndex idx(u);
  MigrationRequest req;
  req.solver_command = {"python3", solver("brute_maxsat.py")};
  const auto r = solve_migration(idx, req);
  CHECK(r.delta == 2);
  CHECK(r.optimum.externally_claimed);
  req.solver_command = {solver("wrong_cost.sh")};
  CHECK(code_of([&] { solve_migration(idx, req); }) == Errc::OptimumMismatch);
}

TEST_CASE("unknown packages get suggestions") {
  const Universe u = universe_of("Package: libfoo\nVersion: 1\n\nPackage: bar\nVersion: 1\n");
  CHECK(resolve_package(u, "libfoo/1") == pkg(u, "libfoo/1"));
  try {
    resolve_package(u, "libfop/1");
    FAIL("expected UnknownPackage");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownPackage);
    CHECK(std::string(e.what()).find("libfoo") != std::string::npos);
  }
  CHECK(suggest_names(u, "zzzzzz").empty());
}

TEST_CASE("alternatives differ from the optimum") {
  const Universe u = universe_of("", "Package: a\nVersion: 1\n\nPackage: a\nVersion: 2\n");
  const ClosureIndex idx(u);
  MigrationRequest req;
  req.alternatives = 3;
  const auto r = solve_migration(idx, req);
  CHECK(r.delta == 1);
  REQUIRE(r.alternatives.size() >= 1);
  CHECK(r.alternatives[0].t_prime != r.t_prime);
  CHECK(r.alternatives[0].satisfied == 1);
}

TEST_CASE("optimal modes match enumeration on disjoint repositories") {
  std::mt19937_64 rng(91);
  for (int iter = 0; iter < 120; ++iter) {
    UniverseShape shape;
    shape.packages = 1 + rng() % 8;
    shape.disjoint = true;
    shape.conflict_density = 0.05 * static_cast<double>(iter % 4);
    const Universe u = random_universe(rng, shape);
    const ClosureIndex idx(u);
    if (!diagnose_testing(idx).clean()) continue;
    const auto adm = enumerate_admissible(u, {});
    const auto best = brute_optimum(u, adm);
    CAPTURE(iter);
    MigrationRequest req;
    const auto mx = solve_migration(idx, req);
    CHECK(mx.verification.ok());
    CHECK(mx.delta == best.max_delta);
    req.mode = Mode::MinNontrivial;
    if (best.min_delta) {
      const auto mn = solve_migration(idx, req);
      CHECK(mn.delta == *best.min_delta);
      CHECK(mn.t_prime != u.testing());
    } else if (!u.unstable().empty() || !u.testing().empty()) {
      CHECK(code_of([&] { solve_migration(idx, req); }) == Errc::Unsolvable);
    }
    req.mode = Mode::Target;
    for (PkgId p : u.unstable()) {
      req.target = p;
      const auto want = brute_target(u, adm, p);
      if (want) {
        const auto r = solve_migration(idx, req);
        CHECK(contains(r.t_prime, p));
        CHECK(r.delta == *want);
      } else {
        CHECK(code_of([&] { solve_migration(idx, req); }) == Errc::Unsolvable);
      }
    }
  }
}

TEST_CASE("stats rows") {
  const Universe u = universe_of("Package: a\nVersion: 1\nDepends: b\n\nPackage: b\nVersion: 1\n");
  const ClosureIndex idx(u);
  const auto s = collect_stats(idx, {});
  REQUIRE(s.rows.size() == 6);
  CHECK(s.rows[0].encoding == Encoding::P1);
  CHECK(s.rows[2].stats.inst_atoms == 3);
  CHECK(s.rows.back().stats.inst_atoms == 0);
  const Universe empty = universe_of("");
  const ClosureIndex ei(empty);
  for (const auto& row : collect_stats(ei, {}).rows) CHECK(row.stats.atoms() == 0);
}
