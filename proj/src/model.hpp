#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "closure.hpp"
#include "policy.hpp"
#include "sat/cnf.hpp"
#include "universe.hpp"

namespace tmig {

/// Every dependency of every member is met inside `installation` and no two
/// members conflict. `installation` must be sorted.
bool is_healthy(const Universe& u, const PackageSet& installation);

enum class InstallCheck { Auto, Oracle, Sat };

inline constexpr std::size_t kOracleContextLimit = 20;

/// Some healthy I ⊆ repo contains p. Only D̄*(p) ∩ repo is searched. The
/// oracle enumerates subsets of that context and throws ContextTooLarge
/// beyond kOracleContextLimit members; Auto uses it when it fits.
bool is_installable(const ClosureIndex& idx, PkgId p, const PackageSet& repo, InstallCheck how = InstallCheck::Sat);

/// Single-context SAT query "p has a healthy installation inside repo".
/// Variable k + 1 stands for context[k].
struct InstallQuery {
  enum class Kind { Root, Dependency, Conflict };
  struct Origin {
    Kind kind;
    PkgId pkg;
    PkgId other = 0;             // conflict partner
    std::size_t disjunction = 0;  // index into deps(pkg)
  };
  PackageSet context;
  sat::ClauseList clauses;
  std::vector<Origin> origins;
};
InstallQuery installability_query(const ClosureIndex& idx, PkgId p, const PackageSet& repo);

bool is_trimmed(const ClosureIndex& idx, const PackageSet& repo);

struct Verdict {
  enum class Kind { Ok, Uniqueness, Trimmedness, Policy };
  Kind kind = Kind::Ok;
  PkgId first = 0;
  PkgId second = 0;    // Uniqueness only
  std::size_t rule = 0;  // Policy only

  bool ok() const { return kind == Kind::Ok; }
};

/// Uniqueness, then trimmedness, then policy; reports the first witness in
/// package order.
Verdict is_admissible(const ClosureIndex& idx, const PackageSet& t_prime, const PolicyRules& policy);

std::string describe(const Verdict& v, const Universe& u, const PolicyRules& policy);

/// All admissible T′ ⊆ B as bit masks over package ids, ascending. Computed
/// without SAT: healthy installations are enumerated directly and R is
/// trimmed iff the union of the healthy installations inside R is R.
/// Throws TooLarge for more than 20 packages.
std::vector<std::uint32_t> enumerate_admissible(const Universe& u, const PolicyRules& policy);

PackageSet mask_to_set(std::uint32_t mask);
std::uint32_t set_to_mask(const PackageSet& s);

}  // namespace tmig
