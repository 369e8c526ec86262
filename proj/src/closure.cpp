#include "closure.hpp"

#include <algorithm>
#include <limits>

namespace tmig {
namespace {

constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();

// Tarjan, iterative. Components are numbered in completion order, so every
// edge leads to a component with an equal or smaller number.
std::uint32_t strongly_connected(const std::vector<PackageSet>& succ, std::vector<std::uint32_t>& comp) {
  const std::size_t n = succ.size();
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<PkgId> stack;
  std::vector<std::pair<PkgId, std::size_t>> calls;
  comp.assign(n, kUnvisited);
  std::uint32_t counter = 0, ncomp = 0;
  for (PkgId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    calls.emplace_back(root, 0);
    while (!calls.empty()) {
      auto& [v, next] = calls.back();
      if (next < succ[v].size()) {
        const PkgId w = succ[v][next++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          calls.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const PkgId done = v;
      if (low[done] == index[done]) {
        PkgId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = ncomp;
        } while (w != done);
        ++ncomp;
      }
      calls.pop_back();
      if (!calls.empty()) {
        const PkgId parent = calls.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  return ncomp;
}

}  // namespace

ClosureIndex::ClosureIndex(const Universe& u) : u_(&u) {
  const std::size_t n = u.size();
  may_dep_.resize(n);
  reverse_.resize(n);
  for (PkgId p = 0; p < n; ++p) {
    auto& out = may_dep_[p];
    for (const Disjunction& d : u.deps(p)) out.insert(out.end(), d.members.begin(), d.members.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (PkgId q : out) reverse_[q].push_back(p);
  }

  const std::uint32_t ncomp = strongly_connected(may_dep_, comp_);
  std::vector<std::vector<PkgId>> members(ncomp);
  for (PkgId p = 0; p < n; ++p) members[comp_[p]].push_back(p);

  comp_closure_.resize(ncomp);
  std::vector<char> comp_endpoint(ncomp, 0);
  std::vector<std::uint32_t> stamp(n, kUnvisited);
  std::vector<std::uint32_t> comp_stamp(ncomp, kUnvisited);
  std::vector<PkgId> acc;
  for (std::uint32_t c = 0; c < ncomp; ++c) {
    acc.clear();
    auto add = [&](PkgId id) {
      if (stamp[id] != c) {
        stamp[id] = c;
        acc.push_back(id);
      }
    };
    for (PkgId m : members[c]) {
      add(m);
      if (is_conflict_endpoint(m)) comp_endpoint[c] = 1;
    }
    for (PkgId m : members[c]) {
      for (PkgId s : may_dep_[m]) {
        const std::uint32_t sc = comp_[s];
        if (sc == c || comp_stamp[sc] == c) continue;
        comp_stamp[sc] = c;
        comp_endpoint[c] = comp_endpoint[c] || comp_endpoint[sc];
        comp_closure_[sc].for_each(add);
      }
    }
    std::sort(acc.begin(), acc.end());
    comp_closure_[c] = IdSet::from_sorted(acc, n);
  }

  easy_.resize(n);
  for (PkgId p = 0; p < n; ++p) easy_[p] = comp_endpoint[comp_[p]] ? 0 : 1;
  lazy_ = std::make_unique<Lazy[]>(n);
}

PackageSet ClosureIndex::easy() const {
  PackageSet out;
  for (PkgId p = 0; p < easy_.size(); ++p)
    if (easy_[p]) out.push_back(p);
  return out;
}

PackageSet ClosureIndex::hard_closure(PkgId p) const {
  if (is_easy(p)) return {p};
  // Successors of easy packages are easy, so every hard member of D̄*(p) is
  // reachable from p along hard packages only.
  PackageSet out;
  closure(p).for_each([&](PkgId q) {
    if (!easy_[q]) out.push_back(q);
  });
  return out;
}

const ClosureIndex::Lazy& ClosureIndex::lazy(PkgId p) const {
  Lazy& entry = lazy_[p];
  std::call_once(entry.once, [&] {
    const IdSet& cl = closure(p);
    cl.for_each([&](PkgId q) {
      for (PkgId r : u_->conflicts_of(q))
        if (q < r && cl.contains(r)) entry.relevant.push_back({q, r});
    });
    if (entry.relevant.empty()) {
      entry.connecting = {p};
      return;
    }
    // Reverse search from the relevant endpoints; everything that reaches one
    // of them from inside D̄*(p) stays inside D̄*(p).
    std::vector<char> seen(u_->size(), 0);
    std::vector<PkgId> work;
    for (const ConflictPair& c : entry.relevant) {
      for (PkgId e : {c.first, c.second}) {
        if (!seen[e]) {
          seen[e] = 1;
          work.push_back(e);
        }
      }
    }
    PackageSet result;
    while (!work.empty()) {
      const PkgId x = work.back();
      work.pop_back();
      result.push_back(x);
      for (PkgId pred : reverse_[x]) {
        if (!seen[pred] && cl.contains(pred)) {
          seen[pred] = 1;
          work.push_back(pred);
        }
      }
    }
    if (!seen[p]) result.push_back(p);
    std::sort(result.begin(), result.end());
    entry.connecting = std::move(result);
  });
  return entry;
}

}  // namespace tmig
