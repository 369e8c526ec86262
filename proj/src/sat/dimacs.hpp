#pragma once

#include <string>
#include <string_view>

#include "sat/cnf.hpp"

namespace tmig::sat {

enum class DimacsKind { Cnf, Wcnf };

/// CNF: `p cnf <vars> <clauses>`. WCNF: `p wcnf <vars> <clauses> <top>` with
/// top = soft count + 1; hard clauses carry weight top, soft clauses weight 1.
/// Throws Error(InvalidArgument) when CNF is requested for an instance with
/// soft clauses.
std::string emit_dimacs(const Instance& instance, DimacsKind kind);

/// Inverse of emit_dimacs. Accepts comment lines and clauses spanning lines.
Instance parse_dimacs(std::string_view text);

}  // namespace tmig::sat
