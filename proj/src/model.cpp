#include "model.hpp"

#include <algorithm>

#include "error.hpp"
#include "sat/solver.hpp"

namespace tmig {
namespace {

bool healthy_mask(const Universe& u, std::uint32_t mask) {
  for (PkgId p = 0; p < u.size(); ++p) {
    if (!((mask >> p) & 1u)) continue;
    for (const Disjunction& d : u.deps(p)) {
      bool met = false;
      for (PkgId q : d.members) met = met || ((mask >> q) & 1u);
      if (!met) return false;
    }
    for (PkgId q : u.conflicts_of(p))
      if ((mask >> q) & 1u) return false;
  }
  return true;
}

bool unique_mask(const Universe& u, std::uint32_t mask) {
  for (const auto& [a, b] : unique_pairs(u))
    if (((mask >> a) & 1u) && ((mask >> b) & 1u)) return false;
  return true;
}

bool installable_by_oracle(const ClosureIndex& idx, PkgId p, const PackageSet& repo) {
  const Universe& u = idx.universe();
  PackageSet ctx;
  idx.closure(p).for_each([&](PkgId q) {
    if (contains(repo, q)) ctx.push_back(q);
  });
  if (ctx.size() > kOracleContextLimit)
    throw Error(Errc::ContextTooLarge, "closure of " + u.label(p) + " has " + std::to_string(ctx.size()) +
                                           " members in the repository; the exhaustive check stops at " +
                                           std::to_string(kOracleContextLimit));
  const auto self = static_cast<std::size_t>(std::lower_bound(ctx.begin(), ctx.end(), p) - ctx.begin());
  PackageSet inst;
  for (std::uint32_t m = 0; m < (1u << ctx.size()); ++m) {
    if (!((m >> self) & 1u)) continue;
    inst.clear();
    for (std::size_t k = 0; k < ctx.size(); ++k)
      if ((m >> k) & 1u) inst.push_back(ctx[k]);
    if (is_healthy(u, inst)) return true;
  }
  return false;
}

}  // namespace

bool is_healthy(const Universe& u, const PackageSet& installation) {
  for (PkgId p : installation) {
    for (const Disjunction& d : u.deps(p)) {
      const bool met = std::any_of(d.members.begin(), d.members.end(), [&](PkgId q) { return contains(installation, q); });
      if (!met) return false;
    }
    for (PkgId q : u.conflicts_of(p))
      if (contains(installation, q)) return false;
  }
  return true;
}

InstallQuery installability_query(const ClosureIndex& idx, PkgId p, const PackageSet& repo) {
  const Universe& u = idx.universe();
  InstallQuery q;
  idx.closure(p).for_each([&](PkgId x) {
    if (contains(repo, x)) q.context.push_back(x);
  });
  auto var = [&](PkgId x) -> std::optional<sat::Lit> {
    auto it = std::lower_bound(q.context.begin(), q.context.end(), x);
    if (it == q.context.end() || *it != x) return std::nullopt;
    return static_cast<sat::Lit>(it - q.context.begin() + 1);
  };
  if (!var(p)) {
    q.clauses.add({});
    q.origins.push_back({InstallQuery::Kind::Root, p});
    return q;
  }
  q.clauses.add({*var(p)});
  q.origins.push_back({InstallQuery::Kind::Root, p});
  std::vector<sat::Lit> lits;
  for (PkgId x : q.context) {
    const auto deps = u.deps(x);
    for (std::size_t k = 0; k < deps.size(); ++k) {
      lits.assign(1, -*var(x));
      for (PkgId y : deps[k].members)
        if (auto v = var(y)) lits.push_back(*v);
      q.clauses.add(lits);
      q.origins.push_back({InstallQuery::Kind::Dependency, x, 0, k});
    }
    for (PkgId y : u.conflicts_of(x)) {
      if (y <= x) continue;
      if (auto v = var(y)) {
        q.clauses.add({-*var(x), -*v});
        q.origins.push_back({InstallQuery::Kind::Conflict, x, y});
      }
    }
  }
  return q;
}

bool is_installable(const ClosureIndex& idx, PkgId p, const PackageSet& repo, InstallCheck how) {
  if (!contains(repo, p)) return false;
  if (how == InstallCheck::Oracle) return installable_by_oracle(idx, p, repo);
  if (how == InstallCheck::Auto && idx.closure(p).size() <= kOracleContextLimit) return installable_by_oracle(idx, p, repo);
  const InstallQuery q = installability_query(idx, p, repo);
  return sat::solve_sat(q.clauses, static_cast<sat::Var>(q.context.size())).status == sat::Status::Sat;
}

bool is_trimmed(const ClosureIndex& idx, const PackageSet& repo) {
  return std::all_of(repo.begin(), repo.end(), [&](PkgId p) { return is_installable(idx, p, repo); });
}

Verdict is_admissible(const ClosureIndex& idx, const PackageSet& t_prime, const PolicyRules& policy) {
  const Universe& u = idx.universe();
  for (std::size_t i = 0; i < t_prime.size(); ++i)
    for (std::size_t j = i + 1; j < t_prime.size(); ++j)
      if (u.package(t_prime[i]).name == u.package(t_prime[j]).name)
        return {Verdict::Kind::Uniqueness, t_prime[i], t_prime[j]};
  for (PkgId p : t_prime)
    if (!is_installable(idx, p, t_prime)) return {Verdict::Kind::Trimmedness, p};
  if (auto rule = first_violated_rule(policy, t_prime)) return {Verdict::Kind::Policy, 0, 0, *rule};
  return {};
}

std::string describe(const Verdict& v, const Universe& u, const PolicyRules& policy) {
  switch (v.kind) {
    case Verdict::Kind::Ok:
      return "admissible";
    case Verdict::Kind::Uniqueness:
      return "uniqueness violated: " + u.label(v.first) + " and " + u.label(v.second);
    case Verdict::Kind::Trimmedness:
      return "trimmedness violated: " + u.label(v.first) + " is not installable";
    case Verdict::Kind::Policy:
      return "policy violated: " + describe_rule(policy, v.rule, u);
  }
  return {};
}

std::vector<std::uint32_t> enumerate_admissible(const Universe& u, const PolicyRules& policy) {
  const std::size_t n = u.size();
  if (n > 20) throw Error(Errc::TooLarge, "exhaustive enumeration is limited to 20 packages");
  const std::uint32_t full = 1u << n;
  // reach[R] = union of all healthy installations contained in R.
  std::vector<std::uint32_t> reach(full);
  for (std::uint32_t m = 0; m < full; ++m) reach[m] = healthy_mask(u, m) ? m : 0;
  for (std::size_t bit = 0; bit < n; ++bit)
    for (std::uint32_t m = 0; m < full; ++m)
      if ((m >> bit) & 1u) reach[m] |= reach[m ^ (1u << bit)];
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < full; ++m) {
    if (reach[m] != m || !unique_mask(u, m)) continue;
    if (first_violated_rule(policy, mask_to_set(m))) continue;
    out.push_back(m);
  }
  return out;
}

PackageSet mask_to_set(std::uint32_t mask) {
  PackageSet s;
  for (PkgId p = 0; mask >> p; ++p)
    if ((mask >> p) & 1u) s.push_back(p);
  return s;
}

std::uint32_t set_to_mask(const PackageSet& s) {
  std::uint32_t m = 0;
  for (PkgId p : s) m |= 1u << p;
  return m;
}

}  // namespace tmig
