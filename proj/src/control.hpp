#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tmig {

enum class Relation { Any, Less, LessEq, Eq, GreaterEq, Greater };

const char* relation_token(Relation r) noexcept;

struct VersionConstraint {
  std::string name;
  Relation relation = Relation::Any;
  std::string bound;  // empty iff relation == Any

  bool matches(std::string_view version) const;
  friend bool operator==(const VersionConstraint&, const VersionConstraint&) = default;
};

using Alternatives = std::vector<VersionConstraint>;
/// Outer list: AND-groups. Inner list: `|`-separated alternatives.
using DependencyExpr = std::vector<Alternatives>;

struct PackageStanza {
  std::string name;
  std::string version;
  DependencyExpr depends;                     // Depends + Pre-Depends
  std::vector<VersionConstraint> conflicts;   // Conflicts + Breaks
  std::vector<std::string> provides;
  std::string architecture;                   // parsed, never interpreted

  friend bool operator==(const PackageStanza&, const PackageStanza&) = default;
};

DependencyExpr parse_dependency_expr(std::string_view text);

/// Conflict fields are comma lists without OR semantics.
std::vector<VersionConstraint> parse_conflict_expr(std::string_view text);

std::vector<PackageStanza> parse_packages(std::string_view text);

std::string format_constraint(const VersionConstraint& c);
std::string format_alternatives(const Alternatives& alts);
std::string format_dependency_expr(const DependencyExpr& expr);
std::string format_stanza(const PackageStanza& stanza);

bool is_valid_package_name(std::string_view name) noexcept;

}  // namespace tmig
