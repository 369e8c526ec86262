#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sat/cnf.hpp"

namespace tmig::sat {

/// Conflict-driven DPLL. Branching is fixed: assumptions first, then
/// statically pure literals in their pure polarity, then the lowest-index
/// unassigned variable in its preferred phase (true unless set otherwise).
/// Restarts follow the Luby sequence. Deterministic for identical input.
class Solver {
 public:
  explicit Solver(Var num_vars = 0);

  Var num_vars() const { return static_cast<Var>(assigns_.size()); }
  Var new_var();
  void add_clause(std::span<const Lit> lits);
  void add_clause(std::initializer_list<Lit> lits) { add_clause(std::span<const Lit>(lits.begin(), lits.size())); }
  void add_clauses(const ClauseList& clauses);
  void set_phase(Var v, bool value);

  /// Sat, Unsat, or Timeout. After Sat, model() holds a total assignment.
  Status solve(std::span<const Lit> assumptions = {}, Deadline deadline = {});
  const Assignment& model() const { return model_; }

  std::uint64_t conflicts() const { return stats_conflicts_; }

 private:
  using Code = std::uint32_t;  // 2 * var_index + sign
  static constexpr std::uint32_t kNoReason = UINT32_MAX;

  struct Clause {
    std::vector<Code> lits;
    bool learnt = false;
    bool deleted = false;
  };
  struct Watcher {
    std::uint32_t cref;
    Code blocker;
  };

  static Code encode(Lit l) { return 2 * (var_of(l) - 1) + (l < 0 ? 1u : 0u); }
  static Code neg(Code c) { return c ^ 1u; }
  static std::uint32_t var_index(Code c) { return c >> 1; }

  // 1 = true, -1 = false, 0 = unassigned
  int value(Code c) const {
    const int a = assigns_[var_index(c)];
    return (c & 1u) ? -a : a;
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(Code c, std::uint32_t reason);
  std::uint32_t propagate();
  void analyze(std::uint32_t confl, std::vector<Code>& learnt, int& backjump);
  bool redundant(Code c) const;
  void cancel_until(int level);
  void attach(std::uint32_t cref);
  std::uint32_t add_internal(std::vector<Code> lits, bool learnt);
  void compute_pure();
  bool pick_branch(Code& out);
  void reduce_learnts();

  std::vector<Clause> clauses_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<int> assigns_;
  std::vector<int> level_;
  std::vector<std::uint32_t> reason_;
  std::vector<char> phase_;
  std::vector<char> seen_;
  std::vector<Code> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<Code> pure_;
  std::vector<std::uint32_t> pure_pos_;
  std::size_t pure_hint_ = 0;
  std::size_t next_var_hint_ = 0;
  std::size_t num_learnts_ = 0;
  std::size_t num_original_ = 0;
  bool ok_ = true;
  bool pure_dirty_ = true;
  std::uint64_t stats_conflicts_ = 0;
  Assignment model_;
};

/// One-shot SAT over `num_vars` variables. The returned model is re-verified
/// against every clause.
SolveResult solve_sat(const ClauseList& hard, Var num_vars, Deadline deadline = {});

}  // namespace tmig::sat
