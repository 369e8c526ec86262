#include "universe.hpp"

#include <algorithm>
#include <numeric>

#include "error.hpp"
#include "version.hpp"

namespace tmig {

bool package_less(const Package& a, const Package& b) {
  if (a.name != b.name) return a.name < b.name;
  const auto cmp = compare_versions(a.version, b.version);
  if (cmp != 0) return cmp < 0;
  return a.version < b.version;
}

std::string to_string(const Package& p) { return p.name + "/" + p.version; }

std::optional<Package> parse_package_spec(std::string_view spec) {
  const auto slash = spec.find('/');
  if (slash == std::string_view::npos || slash == 0 || slash + 1 == spec.size()) return std::nullopt;
  Package p{std::string(spec.substr(0, slash)), std::string(spec.substr(slash + 1))};
  if (!is_valid_package_name(p.name) || !is_valid_version(p.version)) return std::nullopt;
  return p;
}

bool contains(const PackageSet& set, PkgId id) { return std::binary_search(set.begin(), set.end(), id); }

std::optional<PkgId> Universe::find(std::string_view name, std::string_view version) const {
  for (PkgId id : versions_of(name))
    if (packages_[id].version == version) return id;
  return std::nullopt;
}

std::optional<PkgId> Universe::find(const Package& p) const { return find(p.name, p.version); }

std::span<const PkgId> Universe::versions_of(std::string_view name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return {};
  return it->second;
}

std::vector<std::string> Universe::names() const {
  std::vector<std::string> out;
  out.reserve(by_name_.size());
  for (const auto& [name, ids] : by_name_) out.push_back(name);
  return out;
}

bool Universe::conflicts(PkgId a, PkgId b) const {
  const auto& adj = conflict_adj_[a];
  return std::binary_search(adj.begin(), adj.end(), b);
}

PackageSet Universe::testing() const {
  PackageSet out;
  for (PkgId id = 0; id < size(); ++id)
    if (testing_[id]) out.push_back(id);
  return out;
}

PackageSet Universe::unstable() const {
  PackageSet out;
  for (PkgId id = 0; id < size(); ++id)
    if (unstable_[id]) out.push_back(id);
  return out;
}

UniverseBuilder::Entry& UniverseBuilder::entry(const Package& p) {
  auto it = index_.find({p.name, p.version});
  if (it == index_.end())
    throw Error(Errc::UnknownPackage, "package " + to_string(p) + " was not added to the universe");
  return entries_[it->second];
}

void UniverseBuilder::add_package(const Package& p, bool testing, bool unstable) {
  auto [it, inserted] = index_.try_emplace({p.name, p.version}, entries_.size());
  if (inserted) {
    entries_.emplace_back();
    entries_.back().pkg = p;
  }
  Entry& e = entries_[it->second];
  e.testing = e.testing || testing;
  e.unstable = e.unstable || unstable;
}

void UniverseBuilder::add_dependency(const Package& p, const std::vector<Package>& disjunction, std::string source) {
  entry(p).deps.emplace_back(disjunction, std::move(source));
}

void UniverseBuilder::add_conflict(const Package& a, const Package& b) {
  entry(a).conflicts.push_back(b);
  (void)entry(b);
}

Universe UniverseBuilder::build() const {
  const std::size_t n = entries_.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return package_less(entries_[a].pkg, entries_[b].pkg); });
  std::vector<PkgId> id_of(n);
  for (std::size_t i = 0; i < n; ++i) id_of[order[i]] = static_cast<PkgId>(i);
  auto lookup = [&](const Package& p) -> PkgId {
    auto it = index_.find({p.name, p.version});
    if (it == index_.end())
      throw Error(Errc::UnknownPackage, "relation mentions " + to_string(p) + " which is not in the universe");
    return id_of[it->second];
  };

  Universe u;
  u.packages_.resize(n);
  u.deps_.resize(n);
  u.conflict_adj_.resize(n);
  u.testing_.assign(n, 0);
  u.unstable_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Entry& e = entries_[order[i]];
    const auto id = static_cast<PkgId>(i);
    u.packages_[id] = e.pkg;
    u.testing_[id] = e.testing;
    u.unstable_[id] = e.unstable;
    u.by_name_[e.pkg.name].push_back(id);
    for (const auto& [members, source] : e.deps) {
      Disjunction d;
      d.source = source;
      for (const Package& m : members) d.members.push_back(lookup(m));
      std::sort(d.members.begin(), d.members.end());
      d.members.erase(std::unique(d.members.begin(), d.members.end()), d.members.end());
      u.deps_[id].push_back(std::move(d));
    }
    for (const Package& c : e.conflicts) {
      const PkgId other = lookup(c);
      if (other == id) continue;
      u.conflict_adj_[id].push_back(other);
      u.conflict_adj_[other].push_back(id);
    }
  }
  for (PkgId id = 0; id < n; ++id) {
    auto& adj = u.conflict_adj_[id];
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    for (PkgId other : adj)
      if (id < other) u.conflict_pairs_.push_back({id, other});
  }
  return u;
}

namespace {

struct Candidate {
  Package pkg;
  const PackageStanza* stanza;
};

bool same_metadata(const PackageStanza& a, const PackageStanza& b) {
  return a.depends == b.depends && a.conflicts == b.conflicts && a.provides == b.provides;
}

}  // namespace

Universe build_universe(const std::vector<PackageStanza>& testing, const std::vector<PackageStanza>& unstable) {
  UniverseBuilder builder;
  std::map<std::pair<std::string, std::string>, const PackageStanza*> seen;
  std::map<std::string, std::vector<Package>, std::less<>> real;
  std::map<std::string, std::vector<Package>, std::less<>> providers;
  std::vector<const PackageStanza*> unique;

  auto add_all = [&](const std::vector<PackageStanza>& stanzas, bool in_testing) {
    for (const PackageStanza& s : stanzas) {
      auto [it, inserted] = seen.try_emplace({s.name, s.version}, &s);
      if (!inserted) {
        if (!same_metadata(*it->second, s))
          throw Error(Errc::DuplicatePackage,
                      s.name + "/" + s.version + " appears twice with different relationship fields");
      } else {
        unique.push_back(&s);
        real[s.name].push_back({s.name, s.version});
        for (const auto& v : s.provides) providers[v].push_back({s.name, s.version});
      }
      builder.add_package({s.name, s.version}, in_testing, !in_testing);
    }
  };
  add_all(testing, true);
  add_all(unstable, false);

  auto expand = [&](const VersionConstraint& c, std::vector<Package>& out) {
    if (auto it = real.find(c.name); it != real.end())
      for (const Package& p : it->second)
        if (c.matches(p.version)) out.push_back(p);
    if (c.relation == Relation::Any)
      if (auto it = providers.find(c.name); it != providers.end())
        out.insert(out.end(), it->second.begin(), it->second.end());
  };

  for (const PackageStanza* s : unique) {
    const Package self{s->name, s->version};
    for (const Alternatives& group : s->depends) {
      std::vector<Package> members;
      for (const VersionConstraint& c : group) expand(c, members);
      builder.add_dependency(self, members, format_alternatives(group));
    }
    for (const VersionConstraint& c : s->conflicts) {
      std::vector<Package> targets;
      expand(c, targets);
      for (const Package& t : targets)
        if (t.name != self.name) builder.add_conflict(self, t);
    }
  }
  return builder.build();
}

std::vector<std::pair<PkgId, PkgId>> unique_pairs(const Universe& u) {
  std::vector<std::pair<PkgId, PkgId>> out;
  for (const std::string& name : u.names()) {
    auto ids = u.versions_of(name);
    for (PkgId a : ids)
      for (PkgId b : ids)
        if (a != b) out.emplace_back(a, b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tmig
