#include "sat/mus.hpp"

#include "error.hpp"
#include "sat/solver.hpp"

namespace tmig::sat {
namespace {

Status solve_subset(const ClauseList& clauses, const std::vector<std::size_t>& keep, std::size_t skip,
                    Deadline deadline) {
  Solver solver(clauses.max_var());
  for (std::size_t k = 0; k < keep.size(); ++k)
    if (k != skip) solver.add_clause(clauses[keep[k]]);
  return solver.solve({}, deadline);
}

void check(Status s) {
  if (s == Status::Timeout) throw Error(Errc::Timeout, "MUS extraction ran out of time");
}

}  // namespace

MusResult extract_mus(const ClauseList& clauses, Deadline deadline) {
  std::vector<std::size_t> current(clauses.size());
  for (std::size_t i = 0; i < clauses.size(); ++i) current[i] = i;
  const Status whole = solve_subset(clauses, current, SIZE_MAX, deadline);
  check(whole);
  if (whole == Status::Sat) throw Error(Errc::NotUnsat, "clause set is satisfiable; there is no unsatisfiable core");

  std::size_t k = 0;
  while (k < current.size()) {
    const Status s = solve_subset(clauses, current, k, deadline);
    check(s);
    if (s == Status::Unsat)
      current.erase(current.begin() + static_cast<std::ptrdiff_t>(k));
    else
      ++k;
  }
  if (!verify_mus(clauses, current, deadline))
    throw Error(Errc::NotUnsat, "deletion-based core failed its minimality check");
  return MusResult{std::move(current)};
}

bool verify_mus(const ClauseList& clauses, const std::vector<std::size_t>& core, Deadline deadline) {
  const Status whole = solve_subset(clauses, core, SIZE_MAX, deadline);
  check(whole);
  if (whole != Status::Unsat) return false;
  for (std::size_t k = 0; k < core.size(); ++k) {
    const Status s = solve_subset(clauses, core, k, deadline);
    check(s);
    if (s != Status::Sat) return false;
  }
  return true;
}

}  // namespace tmig::sat
