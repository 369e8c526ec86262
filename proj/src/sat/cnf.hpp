#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace tmig::sat {

/// DIMACS literal: +v / -v for variable v >= 1.
using Lit = std::int32_t;
using Var = std::uint32_t;

inline Var var_of(Lit l) { return static_cast<Var>(l < 0 ? -l : l); }

/// Flat clause storage; clause i is a contiguous span of literals.
class ClauseList {
 public:
  void add(std::span<const Lit> lits) {
    lits_.insert(lits_.end(), lits.begin(), lits.end());
    ends_.push_back(lits_.size());
  }
  void add(std::initializer_list<Lit> lits) { add(std::span<const Lit>(lits.begin(), lits.size())); }
  void append(const ClauseList& other) {
    for (std::size_t i = 0; i < other.size(); ++i) add(other[i]);
  }

  std::size_t size() const { return ends_.size(); }
  bool empty() const { return ends_.empty(); }
  std::size_t literal_count() const { return lits_.size(); }

  std::span<const Lit> operator[](std::size_t i) const {
    const std::size_t begin = i == 0 ? 0 : ends_[i - 1];
    return {lits_.data() + begin, ends_[i] - begin};
  }

  /// Largest variable mentioned, 0 when empty.
  Var max_var() const {
    Var m = 0;
    for (Lit l : lits_) m = std::max(m, var_of(l));
    return m;
  }

  friend bool operator==(const ClauseList&, const ClauseList&) = default;

 private:
  std::vector<Lit> lits_;
  std::vector<std::size_t> ends_;
};

struct Instance {
  Var num_vars = 0;
  ClauseList hard;
  ClauseList soft;  // weight 1 each

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Total assignment over variables 1..n; everything not set is false.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(Var num_vars) : values_(num_vars + 1, 0) {}

  Var num_vars() const { return values_.empty() ? 0 : static_cast<Var>(values_.size() - 1); }
  bool value(Var v) const { return v < values_.size() && values_[v] != 0; }
  void set(Var v, bool value) {
    if (v >= values_.size()) values_.resize(v + 1, 0);
    values_[v] = value ? 1 : 0;
  }
  bool satisfies(Lit l) const { return l > 0 ? value(var_of(l)) : !value(var_of(l)); }
  bool satisfies(std::span<const Lit> clause) const {
    for (Lit l : clause)
      if (satisfies(l)) return true;
    return false;
  }
  std::vector<Var> true_set() const {
    std::vector<Var> out;
    for (Var v = 1; v < values_.size(); ++v)
      if (values_[v]) out.push_back(v);
    return out;
  }
  /// Restricted to variables 1..n.
  Assignment truncated(Var n) const {
    Assignment a(n);
    for (Var v = 1; v <= n && v < values_.size(); ++v) a.values_[v] = values_[v];
    return a;
  }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<char> values_;
};

std::optional<std::size_t> first_violated(const Assignment& a, const ClauseList& clauses);
std::size_t count_satisfied(const Assignment& a, const ClauseList& clauses);

enum class Status { Sat, Unsat, Optimal, Timeout };
const char* status_name(Status s);

struct SolveResult {
  Status status = Status::Unsat;
  Assignment assignment;          // meaningful for Sat / Optimal
  std::size_t satisfied_soft = 0;  // meaningful for Optimal
  bool externally_claimed = false;
  std::optional<std::uint64_t> claimed_cost;  // last `o` line of an external solver
};

using Clock = std::chrono::steady_clock;

struct Deadline {
  std::optional<Clock::time_point> at;

  static Deadline after(double seconds) {
    if (seconds <= 0) return {};
    return {Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds))};
  }
  bool expired() const { return at && Clock::now() >= *at; }
};

}  // namespace tmig::sat
