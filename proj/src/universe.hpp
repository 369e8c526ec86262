#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "control.hpp"

namespace tmig {

using PkgId = std::uint32_t;

struct Package {
  std::string name;
  std::string version;

  friend bool operator==(const Package&, const Package&) = default;
};

/// (name, version) with versions in Debian order; the raw string breaks ties
/// between versions that compare equal ("1.0" vs "1.00").
bool package_less(const Package& a, const Package& b);

std::string to_string(const Package& p);  // "name/version"

/// Parses "name/version".
std::optional<Package> parse_package_spec(std::string_view spec);

/// Sorted, duplicate-free list of package ids.
using PackageSet = std::vector<PkgId>;

bool contains(const PackageSet& set, PkgId id);

struct Disjunction {
  PackageSet members;  // empty: the dependency cannot be satisfied
  std::string source;  // dependency text it was expanded from
};

struct ConflictPair {
  PkgId first;   // first < second
  PkgId second;
  friend bool operator==(const ConflictPair&, const ConflictPair&) = default;
  friend auto operator<=>(const ConflictPair&, const ConflictPair&) = default;
};

/// B = T ∪ U with the expanded dependency function and the conflict relation.
/// Package ids follow package_less order. Immutable once built.
class Universe {
 public:
  std::size_t size() const { return packages_.size(); }
  const Package& package(PkgId id) const { return packages_[id]; }
  std::string label(PkgId id) const { return to_string(packages_[id]); }

  std::optional<PkgId> find(const Package& p) const;
  std::optional<PkgId> find(std::string_view name, std::string_view version) const;
  /// All versions of a name, ascending.
  std::span<const PkgId> versions_of(std::string_view name) const;
  std::vector<std::string> names() const;

  std::span<const Disjunction> deps(PkgId id) const { return deps_[id]; }
  /// Sorted conflict neighbours of id (symmetric, irreflexive).
  std::span<const PkgId> conflicts_of(PkgId id) const { return conflict_adj_[id]; }
  bool conflicts(PkgId a, PkgId b) const;
  const std::vector<ConflictPair>& conflict_pairs() const { return conflict_pairs_; }
  bool has_conflicts() const { return !conflict_pairs_.empty(); }

  bool in_testing(PkgId id) const { return testing_[id] != 0; }
  bool in_unstable(PkgId id) const { return unstable_[id] != 0; }
  PackageSet testing() const;
  PackageSet unstable() const;

 private:
  friend class UniverseBuilder;

  std::vector<Package> packages_;
  std::vector<std::vector<Disjunction>> deps_;
  std::vector<std::vector<PkgId>> conflict_adj_;
  std::vector<ConflictPair> conflict_pairs_;
  std::vector<char> testing_;
  std::vector<char> unstable_;
  std::map<std::string, std::vector<PkgId>, std::less<>> by_name_;
};

/// Assembles a Universe from already-expanded relations. Packages are keyed by
/// (name, version); ids are assigned at build().
class UniverseBuilder {
 public:
  /// Adding an existing package again only widens its repository membership.
  void add_package(const Package& p, bool testing, bool unstable);
  void add_dependency(const Package& p, const std::vector<Package>& disjunction, std::string source = {});
  void add_conflict(const Package& a, const Package& b);
  Universe build() const;

 private:
  struct Entry {
    Package pkg;
    bool testing = false;
    bool unstable = false;
    std::vector<std::pair<std::vector<Package>, std::string>> deps;
    std::vector<Package> conflicts;
  };
  Entry& entry(const Package& p);
  std::vector<Entry> entries_;
  std::map<std::pair<std::string, std::string>, std::size_t> index_;
};

/// Dependency expansion over B = testing ∪ unstable. Stanzas with equal
/// (name, version) denote one package; differing metadata is rejected.
Universe build_universe(const std::vector<PackageStanza>& testing, const std::vector<PackageStanza>& unstable);

/// C_u: ordered pairs with equal name and different version.
std::vector<std::pair<PkgId, PkgId>> unique_pairs(const Universe& u);

}  // namespace tmig
