#pragma once

#include "sat/cnf.hpp"

namespace tmig::sat {

inline constexpr Var kBruteForceMaxVars = 24;

/// Exhaustive enumeration over all 2^n assignments (n <= 24). Without soft
/// clauses: Sat with the first model in counting order, or Unsat. With soft
/// clauses: Optimal with the maximum number of satisfied soft clauses.
/// Throws Error(TooLarge) beyond the bound.
SolveResult brute_force_solve(const Instance& instance, bool maximise);
inline SolveResult brute_force_solve(const Instance& instance) {
  return brute_force_solve(instance, !instance.soft.empty());
}

}  // namespace tmig::sat
