#pragma once

#include <optional>
#include <string>
#include <vector>

#include "closure.hpp"
#include "encoder.hpp"
#include "model.hpp"
#include "policy.hpp"
#include "sat/cnf.hpp"
#include "sat/dimacs.hpp"
#include "universe.hpp"

namespace tmig {

enum class Mode { Max, MinNontrivial, Target };

const char* mode_name(Mode m);  // "max", "min", "target"
std::optional<Mode> parse_mode(std::string_view name);

struct MigrationRequest {
  Mode mode = Mode::Max;
  std::optional<PkgId> target;  // Target mode only
  Encoding encoding = Encoding::P5Pruned;
  PolicyRules policy;
  std::vector<std::string> solver_command;  // empty: embedded solver
  double timeout = 300;                     // seconds, <= 0: unlimited
  std::size_t p2_bound = kDefaultP2Bound;
  bool abort_on_untrimmed = false;
  std::size_t alternatives = 0;
};

/// Violations of the assumption that T is unique and trimmed.
struct TestingDiagnosis {
  std::vector<std::pair<PkgId, PkgId>> duplicates;
  PackageSet uninstallable;

  bool clean() const { return duplicates.empty() && uninstallable.empty(); }
};
TestingDiagnosis diagnose_testing(const ClosureIndex& idx);

struct Optimum {
  std::size_t satisfied = 0;
  std::size_t total = 0;
  bool externally_claimed = false;

  friend bool operator==(const Optimum&, const Optimum&) = default;
};

struct Alternative {
  PackageSet t_prime;
  std::size_t delta = 0;
  std::size_t satisfied = 0;
};

struct MigrationResult {
  PackageSet t_prime;
  PackageSet migrated_in;  // T′ ∖ T
  PackageSet removed;      // T ∖ T′
  std::size_t delta = 0;   // |T △ T′|
  Verdict verification;
  Optimum optimum;
  TestingDiagnosis testing;
  std::vector<Alternative> alternatives;
  InstanceStats stats;
};

/// Encoding plus objective: soft units and the nt/target hard clauses.
EncodedProblem build_problem(const ClosureIndex& idx, const MigrationRequest& req, bool with_objective = true);

/// Throws Unsolvable, Timeout, OptimumMismatch, UntrimmedTesting (only with
/// abort_on_untrimmed) and the encoder's errors.
MigrationResult solve_migration(const ClosureIndex& idx, const MigrationRequest& req);

/// Packages whose PkgVar is true.
PackageSet decode_solution(const sat::Assignment& a, const AtomTable& atoms);

struct Explanation {
  std::vector<Family> families;
  std::vector<std::string> lines;
};

/// MUS of the target-mode hard clauses, one line per core clause. Throws
/// ActuallySolvable when the target can migrate.
Explanation explain_non_migration(const ClosureIndex& idx, const MigrationRequest& req);

/// Why p has no healthy installation inside repo (MUS of the single-context query).
std::vector<std::string> explain_uninstallable(const ClosureIndex& idx, PkgId p, const PackageSet& repo);

/// `easy` line for T′ ∖ T, then one `remove` line per removal whose name
/// does not stay in T′. Throws RefuseUnverified.
std::string render_hints(const Universe& u, const MigrationResult& r);

std::string render_report(const Universe& u, const MigrationResult& r, const PolicyRules& policy);

/// Closest package names by edit distance, for diagnostics.
std::vector<std::string> suggest_names(const Universe& u, std::string_view name, std::size_t limit = 5);

/// Resolves "name/version"; throws UnknownPackage with suggestions.
PkgId resolve_package(const Universe& u, std::string_view spec);

struct EncodingRow {
  Encoding encoding;
  InstanceStats stats;
};

struct StatsReport {
  std::size_t packages = 0;
  std::size_t testing = 0;
  std::size_t unstable = 0;
  std::size_t conflicts = 0;
  std::size_t easy = 0;
  std::vector<EncodingRow> rows;
  std::vector<std::size_t> closure_sizes;     // per package
  std::vector<std::size_t> connecting_sizes;  // per package
  std::vector<std::pair<PkgId, std::size_t>> top_closures;
};
StatsReport collect_stats(const ClosureIndex& idx, const PolicyRules& policy, std::size_t top_k = 10,
                          std::size_t p2_bound = kDefaultP2Bound);
std::string render_stats(const Universe& u, const StatsReport& s);

/// `<index> pkg <name/version>` or `<index> inst <member> @ <context>` per atom.
std::string render_atom_map(const Universe& u, const AtomTable& atoms);

}  // namespace tmig
