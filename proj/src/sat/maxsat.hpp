#pragma once

#include "sat/cnf.hpp"

namespace tmig::sat {

/// Exact partial MaxSAT with unit weights. Linear search from below: every
/// model found raises the bound, and the next round demands at least one more
/// satisfied soft clause through a sequential counter. Stops at UNSAT or when
/// every soft clause holds. Returns Optimal, Unsat, or Timeout; on Timeout the
/// best model so far (if any) is kept in the result.
SolveResult solve_pmaxsat(const Instance& instance, Deadline deadline = {});

/// Sinz sequential counter: at most `bound` of `lits` are true. Fresh
/// auxiliary variables start at `next_var`, which is advanced.
void at_most(std::span<const Lit> lits, std::size_t bound, Var& next_var, ClauseList& out);

}  // namespace tmig::sat
