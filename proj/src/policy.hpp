#pragma once

#include <string_view>
#include <vector>

#include "sat/cnf.hpp"
#include "universe.hpp"

namespace tmig {

struct PolicyLiteral {
  PkgId pkg;
  bool positive;  // true: pkg ∈ T′
  friend bool operator==(const PolicyLiteral&, const PolicyLiteral&) = default;
};

/// Validness rules over "p ∈ T′" propositions. A group holds when all of its
/// literals are true or all are false; a clause holds when one literal is true.
struct PolicyRules {
  std::vector<std::vector<PolicyLiteral>> groups;
  std::vector<std::vector<PolicyLiteral>> clauses;

  bool empty() const { return groups.empty() && clauses.empty(); }
};

/// Line format, '#' starts a comment:
///   group: [+|-]name/version ...
///   clause: [+|-]name/version ...
/// A missing sign means '+'. Throws MalformedPolicy or UnknownPackage.
PolicyRules parse_policy(std::string_view text, const Universe& u);

/// PkgVar of package p is p + 1.
inline sat::Lit policy_lit(const PolicyLiteral& l) {
  const auto v = static_cast<sat::Lit>(l.pkg + 1);
  return l.positive ? v : -v;
}

struct PolicyClause {
  std::vector<sat::Lit> lits;
  std::size_t rule;  // groups first, then clauses, in input order
};

/// Group {l1..lk}: ¬li ∨ lj for every ordered pair i ≠ j. Clauses pass through.
std::vector<PolicyClause> policy_clauses(const PolicyRules& rules);

/// Index of the first rule violated by `t_prime` (numbered as in PolicyClause).
std::optional<std::size_t> first_violated_rule(const PolicyRules& rules, const PackageSet& t_prime);

std::string describe_rule(const PolicyRules& rules, std::size_t rule, const Universe& u);

}  // namespace tmig
