#include "sat/solver.hpp"

#include <algorithm>

#include "error.hpp"

namespace tmig::sat {
namespace {

// Luby restart sequence 1 1 2 1 1 2 4 ...
double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1;
  for (int i = 0; i < seq; ++i) r *= y;
  return r;
}

}  // namespace

Solver::Solver(Var num_vars) {
  for (Var i = 0; i < num_vars; ++i) new_var();
}

Var Solver::new_var() {
  assigns_.push_back(0);
  level_.push_back(0);
  reason_.push_back(kNoReason);
  phase_.push_back(1);
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  pure_pos_.push_back(kNoReason);
  pure_dirty_ = true;
  return static_cast<Var>(assigns_.size());
}

void Solver::set_phase(Var v, bool value) {
  while (num_vars() < v) new_var();
  phase_[v - 1] = value ? 1 : 0;
  pure_dirty_ = true;
}

void Solver::enqueue(Code c, std::uint32_t reason) {
  const auto v = var_index(c);
  assigns_[v] = (c & 1u) ? -1 : 1;
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(c);
}

void Solver::attach(std::uint32_t cref) {
  const auto& lits = clauses_[cref].lits;
  watches_[lits[0]].push_back({cref, lits[1]});
  watches_[lits[1]].push_back({cref, lits[0]});
}

std::uint32_t Solver::add_internal(std::vector<Code> lits, bool learnt) {
  const auto cref = static_cast<std::uint32_t>(clauses_.size());
  clauses_.push_back(Clause{std::move(lits), learnt, false});
  if (learnt)
    ++num_learnts_;
  else
    ++num_original_;
  attach(cref);
  return cref;
}

void Solver::add_clause(std::span<const Lit> lits) {
  if (!ok_) return;
  cancel_until(0);
  std::vector<Code> codes;
  codes.reserve(lits.size());
  for (Lit l : lits) {
    if (l == 0) throw Error(Errc::InvalidArgument, "literal 0 in clause");
    while (num_vars() < var_of(l)) new_var();
    codes.push_back(encode(l));
  }
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  std::vector<Code> kept;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (i + 1 < codes.size() && codes[i + 1] == neg(codes[i])) return;  // tautology
    const int val = value(codes[i]);
    if (val == 1) return;
    if (val == 0) kept.push_back(codes[i]);
  }
  pure_dirty_ = true;
  if (kept.empty()) {
    ok_ = false;
    return;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
    return;
  }
  add_internal(std::move(kept), false);
}

void Solver::add_clauses(const ClauseList& clauses) {
  for (std::size_t i = 0; i < clauses.size(); ++i) add_clause(clauses[i]);
}

std::uint32_t Solver::propagate() {
  std::uint32_t confl = kNoReason;
  while (qhead_ < trail_.size()) {
    const Code false_lit = neg(trail_[qhead_++]);
    auto& ws = watches_[false_lit];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      const Watcher w = ws[i++];
      if (value(w.blocker) == 1) {
        ws[j++] = w;
        continue;
      }
      Clause& c = clauses_[w.cref];
      if (c.deleted) continue;
      if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
      const Code first = c.lits[0];
      const Watcher nw{w.cref, first};
      if (first != w.blocker && value(first) == 1) {
        ws[j++] = nw;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.lits.size(); ++k) {
        if (value(c.lits[k]) != -1) {
          std::swap(c.lits[1], c.lits[k]);
          watches_[c.lits[1]].push_back(nw);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = nw;
      if (value(first) == -1) {
        confl = w.cref;
        qhead_ = trail_.size();
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        enqueue(first, w.cref);
      }
    }
    ws.resize(j);
    if (confl != kNoReason) break;
  }
  return confl;
}

bool Solver::redundant(Code c) const {
  const auto r = reason_[var_index(c)];
  if (r == kNoReason) return false;
  const auto& lits = clauses_[r].lits;
  for (std::size_t k = 1; k < lits.size(); ++k) {
    const auto v = var_index(lits[k]);
    if (!seen_[v] && level_[v] > 0) return false;
  }
  return true;
}

void Solver::analyze(std::uint32_t confl, std::vector<Code>& learnt, int& backjump) {
  learnt.clear();
  learnt.push_back(0);
  int path = 0;
  bool have_p = false;
  Code p = 0;
  std::size_t index = trail_.size();
  do {
    const auto& lits = clauses_[confl].lits;
    for (std::size_t k = have_p ? 1 : 0; k < lits.size(); ++k) {
      const Code q = lits[k];
      const auto v = var_index(q);
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = 1;
      if (level_[v] >= decision_level())
        ++path;
      else
        learnt.push_back(q);
    }
    while (!seen_[var_index(trail_[--index])]) {
    }
    p = trail_[index];
    have_p = true;
    confl = reason_[var_index(p)];
    seen_[var_index(p)] = 0;
    --path;
  } while (path > 0);
  learnt[0] = neg(p);

  const std::vector<Code> before(learnt.begin() + 1, learnt.end());
  std::size_t keep = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k)
    if (!redundant(learnt[k])) learnt[keep++] = learnt[k];
  learnt.resize(keep);
  for (Code c : before) seen_[var_index(c)] = 0;

  backjump = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k)
      if (level_[var_index(learnt[k])] > level_[var_index(learnt[max_i])]) max_i = k;
    std::swap(learnt[1], learnt[max_i]);
    backjump = level_[var_index(learnt[1])];
  }
}

void Solver::cancel_until(int level) {
  if (decision_level() <= level) return;
  for (std::size_t k = trail_.size(); k-- > trail_lim_[level];) {
    const auto v = var_index(trail_[k]);
    assigns_[v] = 0;
    reason_[v] = kNoReason;
    next_var_hint_ = std::min<std::size_t>(next_var_hint_, v);
    if (pure_pos_[v] != kNoReason) pure_hint_ = std::min<std::size_t>(pure_hint_, pure_pos_[v]);
  }
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
}

void Solver::compute_pure() {
  const std::size_t n = assigns_.size();
  std::vector<char> pos(n, 0), negs(n, 0);
  for (const Clause& c : clauses_) {
    if (c.learnt || c.deleted) continue;
    bool sat = false;
    for (Code l : c.lits)
      if (value(l) == 1 && level_[var_index(l)] == 0) sat = true;
    if (sat) continue;
    for (Code l : c.lits) ((l & 1u) ? negs : pos)[var_index(l)] = 1;
  }
  pure_.clear();
  pure_pos_.assign(n, kNoReason);
  for (std::size_t v = 0; v < n; ++v) {
    if (pos[v] == negs[v]) continue;
    pure_pos_[v] = static_cast<std::uint32_t>(pure_.size());
    pure_.push_back(static_cast<Code>(2 * v + (pos[v] ? 0 : 1)));
  }
  pure_hint_ = 0;
  next_var_hint_ = 0;
  pure_dirty_ = false;
}

bool Solver::pick_branch(Code& out) {
  for (std::size_t k = pure_hint_; k < pure_.size(); ++k) {
    if (value(pure_[k]) == 0) {
      pure_hint_ = k;
      out = pure_[k];
      return true;
    }
  }
  pure_hint_ = pure_.size();
  for (std::size_t v = next_var_hint_; v < assigns_.size(); ++v) {
    if (assigns_[v] == 0) {
      next_var_hint_ = v;
      out = static_cast<Code>(2 * v + (phase_[v] ? 0 : 1));
      return true;
    }
  }
  next_var_hint_ = assigns_.size();
  return false;
}

void Solver::reduce_learnts() {
  std::vector<std::uint32_t> cands;
  for (std::uint32_t cref = 0; cref < clauses_.size(); ++cref) {
    const Clause& c = clauses_[cref];
    if (!c.learnt || c.deleted || c.lits.size() <= 2) continue;
    const Code first = c.lits[0];
    if (value(first) == 1 && reason_[var_index(first)] == cref) continue;
    cands.push_back(cref);
  }
  std::stable_sort(cands.begin(), cands.end(), [&](std::uint32_t a, std::uint32_t b) {
    return clauses_[a].lits.size() > clauses_[b].lits.size();
  });
  for (std::size_t k = 0; k < cands.size() / 2; ++k) {
    Clause& c = clauses_[cands[k]];
    c.deleted = true;
    c.lits.clear();
    c.lits.shrink_to_fit();
    --num_learnts_;
  }
}

Status Solver::solve(std::span<const Lit> assumptions, Deadline deadline) {
  model_ = Assignment();
  if (!ok_) return Status::Unsat;
  cancel_until(0);
  for (Lit a : assumptions)
    while (num_vars() < var_of(a)) new_var();
  if (pure_dirty_) compute_pure();
  // Pure polarity is only a branching preference; assumptions may override it.
  std::vector<Code> assumed;
  for (Lit a : assumptions) assumed.push_back(encode(a));

  std::vector<Code> learnt;
  int restart = 0;
  std::uint64_t restart_budget = static_cast<std::uint64_t>(luby(2, restart) * 64);
  std::uint64_t since_restart = 0;
  double max_learnts = std::max<double>(2000.0, static_cast<double>(num_original_) / 2.0);
  std::uint64_t ticks = 0;

  while (true) {
    if ((++ticks & 1023u) == 0 && deadline.expired()) {
      cancel_until(0);
      return Status::Timeout;
    }
    const std::uint32_t confl = propagate();
    if (confl != kNoReason) {
      ++stats_conflicts_;
      ++since_restart;
      if (decision_level() == 0) {
        ok_ = false;
        return Status::Unsat;
      }
      int backjump = 0;
      analyze(confl, learnt, backjump);
      cancel_until(backjump);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        const auto cref = add_internal(learnt, true);
        enqueue(learnt[0], cref);
      }
      continue;
    }
    if (since_restart >= restart_budget) {
      cancel_until(0);
      since_restart = 0;
      restart_budget = static_cast<std::uint64_t>(luby(2, ++restart) * 64);
    }
    if (static_cast<double>(num_learnts_) > max_learnts + static_cast<double>(trail_.size())) {
      reduce_learnts();
      max_learnts *= 1.1;
    }

    Code next = 0;
    bool have = false;
    while (static_cast<std::size_t>(decision_level()) < assumed.size()) {
      const Code a = assumed[decision_level()];
      const int val = value(a);
      if (val == 1) {
        trail_lim_.push_back(trail_.size());
      } else if (val == -1) {
        cancel_until(0);
        return Status::Unsat;
      } else {
        next = a;
        have = true;
        break;
      }
    }
    if (!have && !pick_branch(next)) {
      model_ = Assignment(num_vars());
      for (Var v = 0; v < num_vars(); ++v) model_.set(v + 1, assigns_[v] == 1);
      cancel_until(0);
      return Status::Sat;
    }
    trail_lim_.push_back(trail_.size());
    enqueue(next, kNoReason);
  }
}

SolveResult solve_sat(const ClauseList& hard, Var num_vars, Deadline deadline) {
  Solver solver(std::max(num_vars, hard.max_var()));
  solver.add_clauses(hard);
  SolveResult result;
  result.status = solver.solve({}, deadline);
  if (result.status == Status::Sat) {
    result.assignment = solver.model().truncated(num_vars);
    if (auto bad = first_violated(result.assignment, hard))
      throw Error(Errc::AssignmentInvalid, "embedded solver produced a model violating clause " + std::to_string(*bad));
  }
  return result;
}

std::optional<std::size_t> first_violated(const Assignment& a, const ClauseList& clauses) {
  for (std::size_t i = 0; i < clauses.size(); ++i)
    if (!a.satisfies(clauses[i])) return i;
  return std::nullopt;
}

std::size_t count_satisfied(const Assignment& a, const ClauseList& clauses) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < clauses.size(); ++i)
    if (a.satisfies(clauses[i])) ++n;
  return n;
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Sat: return "SAT";
    case Status::Unsat: return "UNSAT";
    case Status::Optimal: return "OPTIMAL";
    case Status::Timeout: return "TIMEOUT";
  }
  return "?";
}

}  // namespace tmig::sat
