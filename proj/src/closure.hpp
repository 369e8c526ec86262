#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "idset.hpp"
#include "universe.hpp"

namespace tmig {

/// Dependency-closure structure over a Universe:
///   may-depend      D̄(p)   = union of the disjunctions in D(p)
///   closure         D̄*(p)  = reflexive-transitive closure of D̄
///   easy packages   E       = { p | D̄*(p) contains no conflict endpoint }
///   hard closure    D̄_h*(p) = closure of D̄ restricted to B∖E ({p} for p ∈ E)
///   relevant        C_r(p)  = conflicts with both ends in D̄*(p)
///   connecting      D_r(p)  = members of D̄*(p) whose own closure reaches an
///                             endpoint of C_r(p), plus p itself
///
/// Closures are computed once per strongly connected component of D̄, bottom
/// up over the condensation; members of one component share the set. C_r and
/// D_r are computed on first use and cached; concurrent readers are safe.
class ClosureIndex {
 public:
  explicit ClosureIndex(const Universe& u);

  const Universe& universe() const { return *u_; }

  const PackageSet& may_depend(PkgId p) const { return may_dep_[p]; }
  const IdSet& closure(PkgId p) const { return comp_closure_[comp_[p]]; }
  std::uint32_t component(PkgId p) const { return comp_[p]; }
  std::size_t component_count() const { return comp_closure_.size(); }

  bool is_easy(PkgId p) const { return easy_[p] != 0; }
  PackageSet easy() const;
  bool is_conflict_endpoint(PkgId p) const { return !u_->conflicts_of(p).empty(); }

  PackageSet hard_closure(PkgId p) const;
  const std::vector<ConflictPair>& relevant_conflicts(PkgId p) const { return lazy(p).relevant; }
  const PackageSet& connecting(PkgId p) const { return lazy(p).connecting; }

 private:
  struct Lazy {
    std::once_flag once;
    std::vector<ConflictPair> relevant;
    PackageSet connecting;
  };
  const Lazy& lazy(PkgId p) const;

  const Universe* u_;
  std::vector<PackageSet> may_dep_;
  std::vector<PackageSet> reverse_;
  std::vector<std::uint32_t> comp_;
  std::vector<IdSet> comp_closure_;
  std::vector<char> easy_;
  std::unique_ptr<Lazy[]> lazy_;
};

}  // namespace tmig
