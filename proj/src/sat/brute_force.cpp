#include "sat/brute_force.hpp"

#include <algorithm>
#include <cstdint>

#include "error.hpp"

namespace tmig::sat {
namespace {

bool clause_holds(std::span<const Lit> clause, std::uint32_t bits) {
  for (Lit l : clause) {
    const bool value = (bits >> (var_of(l) - 1)) & 1u;
    if ((l > 0) == value) return true;
  }
  return false;
}

Assignment to_assignment(std::uint32_t bits, Var n) {
  Assignment a(n);
  for (Var v = 1; v <= n; ++v) a.set(v, (bits >> (v - 1)) & 1u);
  return a;
}

}  // namespace

SolveResult brute_force_solve(const Instance& instance, bool maximise) {
  const Var n = std::max({instance.num_vars, instance.hard.max_var(), instance.soft.max_var()});
  if (n > kBruteForceMaxVars)
    throw Error(Errc::TooLarge, "brute force is limited to " + std::to_string(kBruteForceMaxVars) + " variables");
  const bool optimise = maximise;
  SolveResult result;
  result.status = Status::Unsat;
  bool found = false;
  std::size_t best = 0;
  std::uint32_t best_bits = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t raw = 0; raw < total; ++raw) {
    const auto bits = static_cast<std::uint32_t>(raw);
    bool ok = true;
    for (std::size_t i = 0; i < instance.hard.size() && ok; ++i) ok = clause_holds(instance.hard[i], bits);
    if (!ok) continue;
    if (!optimise) {
      result.status = Status::Sat;
      result.assignment = to_assignment(bits, n);
      return result;
    }
    std::size_t count = 0;
    for (std::size_t i = 0; i < instance.soft.size(); ++i) count += clause_holds(instance.soft[i], bits) ? 1 : 0;
    if (!found || count > best) {
      found = true;
      best = count;
      best_bits = bits;
    }
  }
  if (found) {
    result.status = Status::Optimal;
    result.assignment = to_assignment(best_bits, n);
    result.satisfied_soft = best;
  }
  return result;
}

}  // namespace tmig::sat
