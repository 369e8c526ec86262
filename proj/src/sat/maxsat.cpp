#include "sat/maxsat.hpp"

#include <algorithm>
#include <optional>

#include "error.hpp"
#include "sat/solver.hpp"

namespace tmig::sat {

void at_most(std::span<const Lit> lits, std::size_t bound, Var& next_var, ClauseList& out) {
  const std::size_t m = lits.size();
  if (bound >= m) return;
  if (bound == 0) {
    for (Lit x : lits) out.add({-x});
    return;
  }
  // reg[i][j]: at least j+1 of lits[0..i] are true
  std::vector<std::vector<Lit>> reg(m - 1, std::vector<Lit>(bound));
  for (auto& row : reg)
    for (Lit& r : row) r = static_cast<Lit>(next_var++);
  out.add({-lits[0], reg[0][0]});
  for (std::size_t j = 1; j < bound; ++j) out.add({-reg[0][j]});
  for (std::size_t i = 1; i + 1 < m; ++i) {
    out.add({-lits[i], reg[i][0]});
    out.add({-reg[i - 1][0], reg[i][0]});
    for (std::size_t j = 1; j < bound; ++j) {
      out.add({-lits[i], -reg[i - 1][j - 1], reg[i][j]});
      out.add({-reg[i - 1][j], reg[i][j]});
    }
    out.add({-lits[i], -reg[i - 1][bound - 1]});
  }
  out.add({-lits[m - 1], -reg[m - 2][bound - 1]});
}

SolveResult solve_pmaxsat(const Instance& instance, Deadline deadline) {
  const Var n = std::max({instance.num_vars, instance.hard.max_var(), instance.soft.max_var()});
  Var next = n + 1;
  ClauseList base = instance.hard;
  std::vector<Lit> indicators;
  std::vector<std::pair<Var, bool>> phases;
  for (std::size_t i = 0; i < instance.soft.size(); ++i) {
    const auto clause = instance.soft[i];
    if (clause.empty()) continue;
    if (clause.size() == 1) {
      indicators.push_back(clause[0]);
      phases.emplace_back(var_of(clause[0]), clause[0] > 0);
      continue;
    }
    const Lit s = static_cast<Lit>(next++);
    std::vector<Lit> def{-s};
    def.insert(def.end(), clause.begin(), clause.end());
    base.add(def);
    indicators.push_back(s);
  }
  const Var counter_start = next;
  const std::size_t satisfiable_soft = indicators.size();
  std::vector<Lit> violated;
  for (Lit ind : indicators) violated.push_back(-ind);

  SolveResult result;
  std::optional<Assignment> best;
  std::size_t best_count = 0;
  while (true) {
    Var aux = counter_start;
    ClauseList counter;
    if (best) at_most(violated, satisfiable_soft - (best_count + 1), aux, counter);
    Solver solver(aux - 1);
    for (auto [v, value] : phases) solver.set_phase(v, value);
    solver.add_clauses(base);
    solver.add_clauses(counter);
    const Status status = solver.solve({}, deadline);
    if (status == Status::Timeout) {
      result.status = Status::Timeout;
      if (best) {
        result.assignment = *best;
        result.satisfied_soft = best_count;
      }
      return result;
    }
    if (status == Status::Unsat) break;
    Assignment model = solver.model().truncated(n);
    if (auto bad = first_violated(model, instance.hard))
      throw Error(Errc::AssignmentInvalid, "embedded MaxSAT model violates hard clause " + std::to_string(*bad));
    const std::size_t count = count_satisfied(model, instance.soft);
    if (best && count <= best_count)
      throw Error(Errc::OptimumMismatch, "MaxSAT bound did not improve");
    best = std::move(model);
    best_count = count;
    if (best_count >= satisfiable_soft) break;
  }
  if (!best) {
    result.status = Status::Unsat;
    return result;
  }
  result.status = Status::Optimal;
  result.assignment = std::move(*best);
  result.satisfied_soft = best_count;
  return result;
}

}  // namespace tmig::sat
