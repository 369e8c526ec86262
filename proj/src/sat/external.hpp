#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sat/cnf.hpp"
#include "sat/dimacs.hpp"

namespace tmig::sat {

/// Runs `command... <instance-file>` and interprets competition-style output
/// (`s`, `v`, `o` lines). The exit code is ignored. Models are always checked
/// against the hard clauses; soft counts are recomputed locally and an
/// OPTIMUM claim is marked externally_claimed.
/// Errors: SolverCrashed, UnparsableOutput, AssignmentInvalid, Timeout.
SolveResult run_external(const Instance& instance, const std::vector<std::string>& command, DimacsKind kind,
                         Deadline deadline = {});

/// Output interpretation used by run_external; `crashed` marks abnormal exit.
SolveResult interpret_solver_output(std::string_view output, const Instance& instance, bool crashed = false);

std::vector<std::string> split_command(std::string_view command);

}  // namespace tmig::sat
