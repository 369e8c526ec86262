#include "encoder.hpp"

#include <algorithm>

#include "error.hpp"

namespace tmig {

const char* encoding_name(Encoding e) {
  switch (e) {
    case Encoding::P1: return "p1";
    case Encoding::P2: return "p2-oracle";
    case Encoding::P3: return "p3";
    case Encoding::P4: return "p4";
    case Encoding::P5Strict: return "p5-strict";
    case Encoding::P5Pruned: return "p5";
  }
  return "?";
}

std::optional<Encoding> parse_encoding(std::string_view name) {
  for (Encoding e : {Encoding::P1, Encoding::P2, Encoding::P3, Encoding::P4, Encoding::P5Strict, Encoding::P5Pruned})
    if (name == encoding_name(e)) return e;
  return std::nullopt;
}

const char* family_name(Family f) {
  static const char* const names[] = {"u", "v", "e", "i", "d", "c", "nt", "target"};
  return names[static_cast<int>(f)];
}

AtomTable::AtomTable(std::size_t packages, const std::vector<PackageSet>& inst_members) : n_(packages) {
  ctx_begin_.assign(1, 0);
  for (PkgId c = 0; c < packages; ++c) {
    if (c < inst_members.size()) {
      members_.insert(members_.end(), inst_members[c].begin(), inst_members[c].end());
      ctx_of_.insert(ctx_of_.end(), inst_members[c].size(), c);
    }
    ctx_begin_.push_back(members_.size());
  }
}

std::optional<sat::Var> AtomTable::inst_var(PkgId member, PkgId ctx) const {
  const auto begin = members_.begin() + static_cast<std::ptrdiff_t>(ctx_begin_[ctx]);
  const auto end = members_.begin() + static_cast<std::ptrdiff_t>(ctx_begin_[ctx + 1]);
  const auto it = std::lower_bound(begin, end, member);
  if (it == end || *it != member) return std::nullopt;
  return static_cast<sat::Var>(n_ + static_cast<std::size_t>(it - members_.begin()) + 1);
}

AtomTable::Atom AtomTable::atom(sat::Var v) const {
  if (v <= n_) return {false, v - 1, kNoPkg};
  const std::size_t k = v - n_ - 1;
  return {true, members_[k], ctx_of_[k]};
}

void EncodedProblem::add_hard(std::vector<sat::Lit> lits, const ClauseOrigin& origin) {
  std::vector<sat::Lit> clean;
  clean.reserve(lits.size());
  for (sat::Lit l : lits) {
    if (std::find(clean.begin(), clean.end(), -l) != clean.end()) {
      ++dropped_tautologies;
      return;
    }
    if (std::find(clean.begin(), clean.end(), l) == clean.end()) clean.push_back(l);
  }
  has_empty_clause = has_empty_clause || clean.empty();
  hard.add(clean);
  origins.push_back(origin);
}

sat::ClauseList uniqueness_clauses(const Universe& u) {
  sat::ClauseList out;
  for (const auto& [a, b] : unique_pairs(u))
    if (a < b) out.add({-static_cast<sat::Lit>(a + 1), -static_cast<sat::Lit>(b + 1)});
  return out;
}

namespace {

sat::Lit pos(sat::Var v) { return static_cast<sat::Lit>(v); }

void add_uniqueness(EncodedProblem& ep, const Universe& u) {
  for (const auto& [a, b] : unique_pairs(u))
    if (a < b) ep.add_hard({-pos(a + 1), -pos(b + 1)}, {Family::U, a, b});
}

void add_policy(EncodedProblem& ep, const PolicyRules& policy) {
  for (auto& pc : policy_clauses(policy)) {
    ClauseOrigin o{Family::V};
    o.index = pc.rule;
    ep.add_hard(std::move(pc.lits), o);
  }
}

// Packages whose per-context clauses are emitted for context c. In pruned P5 a
// context without relevant conflicts still gets its own dependency clauses,
// written over PkgVars.
PackageSet context_members(Encoding e, const ClosureIndex& idx, PkgId c) {
  switch (e) {
    case Encoding::P2: {
      PackageSet all(idx.universe().size());
      for (PkgId p = 0; p < all.size(); ++p) all[p] = p;
      return all;
    }
    case Encoding::P3: return idx.closure(c).to_vector();
    case Encoding::P4: return idx.hard_closure(c);
    case Encoding::P5Strict:
    case Encoding::P5Pruned: return idx.connecting(c);
    case Encoding::P1: break;
  }
  return {c};
}

}  // namespace

EncodedProblem encode(Encoding e, const ClosureIndex& idx, const PolicyRules& policy, EncodeOptions opts) {
  const Universe& u = idx.universe();
  const std::size_t n = u.size();
  if (e == Encoding::P1 && u.has_conflicts())
    throw Error(Errc::ConflictsPresent, "p1 cannot express conflicts; " + std::to_string(u.conflict_pairs().size()) +
                                            " conflict pairs present");
  if (e == Encoding::P2 && n > opts.p2_bound)
    throw Error(Errc::UniverseTooLarge, "p2-oracle is limited to " + std::to_string(opts.p2_bound) + " packages, got " +
                                            std::to_string(n));

  std::vector<PackageSet> scope(n);
  std::vector<PackageSet> inst(n);
  for (PkgId c = 0; c < n; ++c) {
    scope[c] = context_members(e, idx, c);
    const bool pruned = e == Encoding::P1 || (e == Encoding::P5Pruned && idx.relevant_conflicts(c).empty());
    if (!pruned) inst[c] = scope[c];
  }

  EncodedProblem ep;
  ep.encoding = e;
  ep.atoms = AtomTable(n, inst);
  const AtomTable& at = ep.atoms;
  add_uniqueness(ep, u);

  std::vector<sat::Lit> lits;
  for (PkgId c = 0; c < n; ++c) {
    const PackageSet& m = scope[c];
    ep.add_hard({-pos(at.pkg_var(c)), pos(at.context_var(c, c))}, {Family::I, c});
    for (PkgId q : m) ep.add_hard({-pos(at.context_var(q, c)), pos(at.pkg_var(q))}, {Family::E, q, kNoPkg, c});
    for (PkgId q : m) {
      const auto deps = u.deps(q);
      for (std::size_t k = 0; k < deps.size(); ++k) {
        lits.assign(1, -pos(at.context_var(q, c)));
        for (PkgId r : deps[k].members) lits.push_back(pos(at.context_var(r, c)));
        ClauseOrigin o{Family::D, q, kNoPkg, c};
        o.index = k;
        ep.add_hard(lits, o);
      }
    }
    for (PkgId a : m)
      for (PkgId b : u.conflicts_of(a))
        if (a < b && contains(m, b))
          ep.add_hard({-pos(at.context_var(a, c)), -pos(at.context_var(b, c))}, {Family::C, a, b, c});
  }
  add_policy(ep, policy);
  return ep;
}

sat::ClauseList soft_max(const Universe& u) {
  sat::ClauseList out;
  for (PkgId p = 0; p < u.size(); ++p) {
    if (u.in_unstable(p) && !u.in_testing(p)) out.add({pos(p + 1)});
    if (u.in_testing(p) && !u.in_unstable(p)) out.add({-pos(p + 1)});
  }
  return out;
}

sat::ClauseList soft_min(const Universe& u) {
  sat::ClauseList out;
  const sat::ClauseList max = soft_max(u);
  for (std::size_t i = 0; i < max.size(); ++i) out.add({-max[i][0]});
  return out;
}

std::vector<sat::Lit> nontriviality_clause(const Universe& u) {
  const sat::ClauseList max = soft_max(u);
  if (max.empty()) throw Error(Errc::NoChangeCandidates, "testing and unstable hold the same packages; nothing can change");
  std::vector<sat::Lit> out;
  for (std::size_t i = 0; i < max.size(); ++i) out.push_back(max[i][0]);
  return out;
}

std::vector<sat::Lit> target_clause(const Universe& u, PkgId p) {
  if (p >= u.size()) throw Error(Errc::NotAMigrationCandidate, "target is not a known package");
  if (!u.in_unstable(p) || u.in_testing(p))
    throw Error(Errc::NotAMigrationCandidate, u.label(p) + (u.in_testing(p) ? " is already in testing" : " is not in unstable"));
  return {pos(p + 1)};
}

InstanceStats instance_stats(const EncodedProblem& e) {
  InstanceStats s;
  s.pkg_atoms = e.atoms.package_count();
  s.inst_atoms = e.atoms.inst_count();
  s.clauses = e.hard.size();
  for (const auto& o : e.origins) ++s.per_family[static_cast<int>(o.family)];
  return s;
}

}  // namespace tmig
