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

enum class Encoding { P1, P2, P3, P4, P5Strict, P5Pruned };

const char* encoding_name(Encoding e);  // "p1", "p2-oracle", "p3", "p4", "p5-strict", "p5"
std::optional<Encoding> parse_encoding(std::string_view name);

inline constexpr std::size_t kDefaultP2Bound = 10;

/// Variables 1..n are PkgVars (package id + 1). InstVars follow, grouped by
/// context in id order and by member in id order within a context.
class AtomTable {
 public:
  struct Atom {
    bool inst;
    PkgId pkg;
    PkgId ctx;  // inst only
  };

  AtomTable() = default;
  AtomTable(std::size_t packages, const std::vector<PackageSet>& inst_members);

  std::size_t package_count() const { return n_; }
  std::size_t inst_count() const { return members_.size(); }
  sat::Var num_vars() const { return static_cast<sat::Var>(n_ + members_.size()); }

  sat::Var pkg_var(PkgId p) const { return p + 1; }
  std::optional<sat::Var> inst_var(PkgId member, PkgId ctx) const;
  /// InstVar when allocated, otherwise the PkgVar of `member`.
  sat::Var context_var(PkgId member, PkgId ctx) const {
    auto v = inst_var(member, ctx);
    return v ? *v : pkg_var(member);
  }
  std::span<const PkgId> members(PkgId ctx) const {
    return {members_.data() + ctx_begin_[ctx], ctx_begin_[ctx + 1] - ctx_begin_[ctx]};
  }
  Atom atom(sat::Var v) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> ctx_begin_{0};
  std::vector<PkgId> members_;
  std::vector<PkgId> ctx_of_;
};

enum class Family { U, V, E, I, D, C, NT, Target };
const char* family_name(Family f);

inline constexpr PkgId kNoPkg = UINT32_MAX;

struct ClauseOrigin {
  Family family;
  PkgId pkg = kNoPkg;    // U/C: first package; E/D: member; I/Target: package
  PkgId other = kNoPkg;  // U/C: second package
  PkgId ctx = kNoPkg;    // E/D/C: context
  std::size_t index = 0;  // D: disjunction of pkg; V: policy rule
};

struct EncodedProblem {
  Encoding encoding;
  AtomTable atoms;
  sat::ClauseList hard;
  std::vector<ClauseOrigin> origins;  // parallel to hard
  sat::ClauseList soft;
  std::size_t dropped_tautologies = 0;
  bool has_empty_clause = false;

  sat::Instance instance() const { return {atoms.num_vars(), hard, soft}; }
  /// Literals are deduplicated in first-seen order; tautologies are dropped.
  void add_hard(std::vector<sat::Lit> lits, const ClauseOrigin& origin);
};

struct EncodeOptions {
  std::size_t p2_bound = kDefaultP2Bound;
};

/// P_u ∪ P_t ∪ P_v for the chosen encoding. Throws ConflictsPresent (P1 with
/// conflicts) or UniverseTooLarge (P2 above the bound).
EncodedProblem encode(Encoding e, const ClosureIndex& idx, const PolicyRules& policy, EncodeOptions opts = {});

/// {¬p1, ¬p2} per unordered same-name pair.
sat::ClauseList uniqueness_clauses(const Universe& u);

/// Unit soft clauses: {p} for p ∈ U∖T, {¬p} for p ∈ T∖U.
sat::ClauseList soft_max(const Universe& u);
/// Inverted units of soft_max.
sat::ClauseList soft_min(const Universe& u);
/// One clause asking for at least one change. Throws NoChangeCandidates.
std::vector<sat::Lit> nontriviality_clause(const Universe& u);
/// {p}; throws NotAMigrationCandidate unless p ∈ U∖T.
std::vector<sat::Lit> target_clause(const Universe& u, PkgId p);

struct InstanceStats {
  std::size_t pkg_atoms = 0;
  std::size_t inst_atoms = 0;
  std::size_t clauses = 0;
  std::size_t per_family[8] = {};

  std::size_t atoms() const { return pkg_atoms + inst_atoms; }
  std::size_t family(Family f) const { return per_family[static_cast<int>(f)]; }
};
InstanceStats instance_stats(const EncodedProblem& e);

}  // namespace tmig
