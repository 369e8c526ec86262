#pragma once

#include <vector>

#include "sat/cnf.hpp"

namespace tmig::sat {

struct MusResult {
  std::vector<std::size_t> core;  // indices into the input clause list, ascending
};

/// Deletion-based minimal unsatisfiable subset. Each candidate deletion is
/// decided by re-solving the remaining clauses from scratch. The result is
/// machine-checked: the core is UNSAT and every single-clause deletion is SAT.
/// Throws Error(NotUnsat) for satisfiable input, Error(Timeout) on deadline.
MusResult extract_mus(const ClauseList& clauses, Deadline deadline = {});

/// True iff `core` is unsatisfiable and each core-minus-one-clause is satisfiable.
bool verify_mus(const ClauseList& clauses, const std::vector<std::size_t>& core, Deadline deadline = {});

}  // namespace tmig::sat
