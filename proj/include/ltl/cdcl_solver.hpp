#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "ltl/cnf.hpp"

namespace ltl {

/// Conflict-driven clause-learning SAT solver: two watched literals, VSIDS,
/// first-UIP learning with recursive minimization, phase saving, Luby
/// restarts and LBD-based learnt clause reduction. Deterministic.
class CdclSolver {
 public:
  enum class Result { Sat, Unsat, Unknown };
  using Clock = std::chrono::steady_clock;

  struct Stats {
    std::uint64_t decisions = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t propagations = 0;
    std::uint64_t restarts = 0;
  };

  CdclSolver();
  ~CdclSolver();
  CdclSolver(const CdclSolver&) = delete;
  CdclSolver& operator=(const CdclSolver&) = delete;

  /// Ensures variables 1..n exist.
  void reserve_vars(int n);
  int num_vars() const { return static_cast<int>(assign_.size()); }
  /// Returns false once the clause set is known to be unsatisfiable.
  bool add_clause(std::span<const Literal> clause);

  /// Unknown when the deadline passes first.
  Result solve(Clock::time_point deadline = Clock::time_point::max());
  /// Model of the last Sat answer; index 0 unused.
  const std::vector<bool>& model() const { return model_; }
  const Stats& stats() const { return stats_; }

 private:
  using Lit = std::uint32_t;  // 2 * var + negated
  struct ClauseData;
  struct Watcher {
    ClauseData* clause;
    Lit blocker;
  };

  static Lit to_lit(Literal l) { return static_cast<Lit>(2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0)); }
  static std::uint32_t var(Lit l) { return l >> 1; }
  // 1 true, 0 false, -1 unassigned
  int value(Lit l) const {
    const int a = assign_[var(l)];
    return a < 0 ? -1 : (a ^ static_cast<int>(l & 1u));
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(Lit l, ClauseData* reason);
  ClauseData* propagate();
  void analyze(ClauseData* conflict, std::vector<Lit>& learnt, int& backtrack_level, unsigned& lbd);
  bool literal_redundant(Lit l, std::uint32_t abstract_levels);
  void backtrack(int level);
  Lit pick_branch();
  void attach(ClauseData* c);
  void reduce_learnts();
  void bump_var(std::uint32_t v);
  void bump_clause(ClauseData* c);
  bool locked(const ClauseData* c) const;

  // VSIDS heap
  void heap_insert(std::uint32_t v);
  std::uint32_t heap_pop();
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  bool heap_less(std::uint32_t a, std::uint32_t b) const { return activity_[a] > activity_[b]; }

  bool ok_ = true;
  std::vector<std::unique_ptr<ClauseData>> clauses_;
  std::vector<std::unique_ptr<ClauseData>> learnts_;
  std::vector<std::vector<Watcher>> watches_;
  // two-literal clauses; the blocker is the other literal
  std::vector<std::vector<Watcher>> bin_watches_;
  std::vector<std::int8_t> assign_;
  std::vector<std::int8_t> phase_;
  std::vector<int> level_;
  std::vector<ClauseData*> reason_;
  std::vector<double> activity_;
  std::vector<char> seen_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<std::uint32_t> heap_;
  std::vector<int> heap_pos_;
  std::vector<Lit> analyze_stack_;
  std::vector<Lit> analyze_clear_;
  double var_inc_ = 1.0;
  double clause_inc_ = 1.0;
  std::vector<bool> model_;
  Stats stats_;
};

}  // namespace ltl
