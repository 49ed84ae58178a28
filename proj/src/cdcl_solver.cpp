#include "ltl/cdcl_solver.hpp"

#include <algorithm>
#include <cmath>

namespace ltl {

struct CdclSolver::ClauseData {
  std::vector<Lit> lits;
  bool learnt = false;
  bool deleted = false;
  unsigned lbd = 0;
  double activity = 0.0;
};

namespace {

constexpr double kVarDecay = 0.95;
constexpr double kClauseDecay = 0.999;
constexpr std::uint64_t kRestartBase = 100;
constexpr std::uint64_t kFirstReduce = 2000;
constexpr std::uint64_t kReduceIncrement = 300;

double luby(double y, std::uint64_t x) {
  std::uint64_t size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

}  // namespace

CdclSolver::CdclSolver() = default;
CdclSolver::~CdclSolver() = default;

void CdclSolver::reserve_vars(int n) {
  while (num_vars() < n) {
    const auto v = static_cast<std::uint32_t>(assign_.size());
    assign_.push_back(-1);
    phase_.push_back(1);  // prefer false
    level_.push_back(0);
    reason_.push_back(nullptr);
    activity_.push_back(0.0);
    seen_.push_back(0);
    heap_pos_.push_back(-1);
    watches_.emplace_back();
    watches_.emplace_back();
    bin_watches_.emplace_back();
    bin_watches_.emplace_back();
    heap_insert(v);
  }
}

bool CdclSolver::add_clause(std::span<const Literal> clause) {
  if (!ok_) return false;
  backtrack(0);
  std::vector<Lit> lits;
  lits.reserve(clause.size());
  for (Literal l : clause) {
    reserve_vars(std::abs(l));
    lits.push_back(to_lit(l));
  }
  std::sort(lits.begin(), lits.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && lits[i + 1] == (lits[i] ^ 1u)) return true;  // tautology
    if (!kept.empty() && kept.back() == lits[i]) continue;
    const int v = value(lits[i]);
    if (v == 1) return true;
    if (v == 0) continue;
    kept.push_back(lits[i]);
  }
  if (kept.empty()) return ok_ = false;
  if (kept.size() == 1) {
    enqueue(kept[0], nullptr);
    return ok_ = (propagate() == nullptr);
  }
  auto c = std::make_unique<ClauseData>();
  c->lits = std::move(kept);
  attach(c.get());
  clauses_.push_back(std::move(c));
  return true;
}

void CdclSolver::attach(ClauseData* c) {
  auto& lists = c->lits.size() == 2 ? bin_watches_ : watches_;
  lists[c->lits[0] ^ 1u].push_back({c, c->lits[1]});
  lists[c->lits[1] ^ 1u].push_back({c, c->lits[0]});
}

void CdclSolver::enqueue(Lit l, ClauseData* reason) {
  const auto v = var(l);
  assign_[v] = static_cast<std::int8_t>((l & 1u) ? 0 : 1);
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

CdclSolver::ClauseData* CdclSolver::propagate() {
  ClauseData* conflict = nullptr;
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];
    const Lit false_lit = p ^ 1u;
    ++stats_.propagations;
    for (const Watcher& w : bin_watches_[p]) {
      const int v = value(w.blocker);
      if (v == 1) continue;
      if (v == 0) {
        qhead_ = trail_.size();
        return w.clause;
      }
      auto& lits = w.clause->lits;
      if (lits[0] != w.blocker) std::swap(lits[0], lits[1]);
      enqueue(w.blocker, w.clause);
    }
    auto& ws = watches_[p];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      Watcher w = ws[i];
      if (value(w.blocker) == 1) {
        ws[j++] = ws[i++];
        continue;
      }
      auto& lits = w.clause->lits;
      if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
      ++i;
      const Lit first = lits[0];
      if (first != w.blocker && value(first) == 1) {
        ws[j++] = {w.clause, first};
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < lits.size(); ++k) {
        if (value(lits[k]) != 0) {
          std::swap(lits[1], lits[k]);
          watches_[lits[1] ^ 1u].push_back({w.clause, first});
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = {w.clause, first};
      if (value(first) == 0) {
        conflict = w.clause;
        qhead_ = trail_.size();
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        enqueue(first, w.clause);
      }
    }
    ws.resize(j);
    if (conflict) break;
  }
  return conflict;
}

void CdclSolver::bump_var(std::uint32_t v) {
  if ((activity_[v] += var_inc_) > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos_[v]));
}

void CdclSolver::bump_clause(ClauseData* c) {
  if ((c->activity += clause_inc_) > 1e20) {
    for (auto& l : learnts_) l->activity *= 1e-20;
    clause_inc_ *= 1e-20;
  }
}

void CdclSolver::analyze(ClauseData* conflict, std::vector<Lit>& learnt, int& backtrack_level, unsigned& lbd) {
  learnt.clear();
  learnt.push_back(0);
  int path = 0;
  bool have_p = false;
  Lit p = 0;
  std::size_t index = trail_.size();
  ClauseData* c = conflict;
  do {
    if (c->learnt) bump_clause(c);
    for (std::size_t k = have_p ? 1 : 0; k < c->lits.size(); ++k) {
      const Lit q = c->lits[k];
      const auto v = var(q);
      if (!seen_[v] && level_[v] > 0) {
        bump_var(v);
        seen_[v] = 1;
        if (level_[v] >= decision_level())
          ++path;
        else
          learnt.push_back(q);
      }
    }
    while (!seen_[var(trail_[--index])]) {
    }
    p = trail_[index];
    have_p = true;
    c = reason_[var(p)];
    seen_[var(p)] = 0;
    --path;
  } while (path > 0);
  learnt[0] = p ^ 1u;

  // Recursive minimization.
  analyze_clear_.assign(learnt.begin(), learnt.end());
  std::uint32_t abstract_levels = 0;
  for (std::size_t k = 1; k < learnt.size(); ++k) abstract_levels |= 1u << (level_[var(learnt[k])] & 31);
  std::size_t j = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k)
    if (reason_[var(learnt[k])] == nullptr || !literal_redundant(learnt[k], abstract_levels)) learnt[j++] = learnt[k];
  learnt.resize(j);
  for (Lit l : analyze_clear_) seen_[var(l)] = 0;

  backtrack_level = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k)
      if (level_[var(learnt[k])] > level_[var(learnt[max_i])]) max_i = k;
    std::swap(learnt[1], learnt[max_i]);
    backtrack_level = level_[var(learnt[1])];
  }
  std::vector<int> levels;
  for (Lit l : learnt) levels.push_back(level_[var(l)]);
  std::sort(levels.begin(), levels.end());
  lbd = static_cast<unsigned>(std::unique(levels.begin(), levels.end()) - levels.begin());
}

bool CdclSolver::literal_redundant(Lit l, std::uint32_t abstract_levels) {
  analyze_stack_.clear();
  analyze_stack_.push_back(l);
  const std::size_t top = analyze_clear_.size();
  while (!analyze_stack_.empty()) {
    const Lit q = analyze_stack_.back();
    analyze_stack_.pop_back();
    const ClauseData* c = reason_[var(q)];
    for (std::size_t k = 1; k < c->lits.size(); ++k) {
      const Lit r = c->lits[k];
      const auto v = var(r);
      if (!seen_[v] && level_[v] > 0) {
        if (reason_[v] != nullptr && (abstract_levels & (1u << (level_[v] & 31)))) {
          seen_[v] = 1;
          analyze_stack_.push_back(r);
          analyze_clear_.push_back(r);
        } else {
          for (std::size_t m = top; m < analyze_clear_.size(); ++m) seen_[var(analyze_clear_[m])] = 0;
          analyze_clear_.resize(top);
          return false;
        }
      }
    }
  }
  return true;
}

void CdclSolver::backtrack(int level) {
  if (decision_level() <= level) return;
  const std::size_t stop = trail_lim_[static_cast<std::size_t>(level)];
  for (std::size_t i = trail_.size(); i-- > stop;) {
    const auto v = var(trail_[i]);
    phase_[v] = static_cast<std::int8_t>(trail_[i] & 1u);
    assign_[v] = -1;
    reason_[v] = nullptr;
    if (heap_pos_[v] < 0) heap_insert(v);
  }
  trail_.resize(stop);
  trail_lim_.resize(static_cast<std::size_t>(level));
  qhead_ = trail_.size();
}

CdclSolver::Lit CdclSolver::pick_branch() {
  while (!heap_.empty()) {
    const auto v = heap_pop();
    if (assign_[v] < 0) return 2 * v + static_cast<Lit>(phase_[v]);
  }
  return ~Lit{0};
}

bool CdclSolver::locked(const ClauseData* c) const {
  const Lit l = c->lits[0];
  return value(l) == 1 && reason_[var(l)] == c;
}

void CdclSolver::reduce_learnts() {
  std::sort(learnts_.begin(), learnts_.end(), [](const auto& a, const auto& b) {
    if (a->lbd != b->lbd) return a->lbd > b->lbd;
    return a->activity < b->activity;
  });
  const std::size_t target = learnts_.size() / 2;
  std::size_t removed = 0;
  for (auto& c : learnts_) {
    if (removed >= target) break;
    if (c->lbd > 2 && c->lits.size() > 2 && !locked(c.get())) {
      c->deleted = true;
      ++removed;
    }
  }
  for (auto& ws : watches_)
    ws.erase(std::remove_if(ws.begin(), ws.end(), [](const Watcher& w) { return w.clause->deleted; }), ws.end());
  learnts_.erase(std::remove_if(learnts_.begin(), learnts_.end(), [](const auto& c) { return c->deleted; }),
                 learnts_.end());
}

CdclSolver::Result CdclSolver::solve(Clock::time_point deadline) {
  model_.clear();
  if (!ok_) return Result::Unsat;
  backtrack(0);
  if (propagate() != nullptr) {
    ok_ = false;
    return Result::Unsat;
  }
  std::vector<Lit> learnt;
  std::uint64_t restart_index = 0;
  std::uint64_t next_reduce = stats_.conflicts + kFirstReduce;
  std::uint64_t reductions = 0;
  std::uint64_t work = 0;

  while (true) {
    const auto budget = static_cast<std::uint64_t>(luby(2.0, restart_index++) * kRestartBase);
    std::uint64_t local_conflicts = 0;
    while (true) {
      if ((++work & 255u) == 0 && Clock::now() >= deadline) {
        backtrack(0);
        return Result::Unknown;
      }
      ClauseData* conflict = propagate();
      if (conflict) {
        ++stats_.conflicts;
        ++local_conflicts;
        if (decision_level() == 0) {
          ok_ = false;
          return Result::Unsat;
        }
        int bt = 0;
        unsigned lbd = 0;
        analyze(conflict, learnt, bt, lbd);
        backtrack(bt);
        if (learnt.size() == 1) {
          enqueue(learnt[0], nullptr);
        } else {
          auto c = std::make_unique<ClauseData>();
          c->lits = learnt;
          c->learnt = true;
          c->lbd = lbd;
          attach(c.get());
          bump_clause(c.get());
          enqueue(learnt[0], c.get());
          learnts_.push_back(std::move(c));
        }
        var_inc_ /= kVarDecay;
        clause_inc_ /= kClauseDecay;
        continue;
      }
      if (local_conflicts >= budget) {
        ++stats_.restarts;
        backtrack(0);
        break;
      }
      if (stats_.conflicts >= next_reduce) {
        ++reductions;
        next_reduce = stats_.conflicts + kFirstReduce + reductions * kReduceIncrement;
        reduce_learnts();
      }
      const Lit next = pick_branch();
      if (next == ~Lit{0}) {
        model_.assign(assign_.size() + 1, false);
        for (std::size_t v = 0; v < assign_.size(); ++v) model_[v + 1] = assign_[v] == 1;
        backtrack(0);
        return Result::Sat;
      }
      ++stats_.decisions;
      trail_lim_.push_back(trail_.size());
      enqueue(next, nullptr);
    }
  }
}

void CdclSolver::heap_insert(std::uint32_t v) {
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

std::uint32_t CdclSolver::heap_pop() {
  const auto top = heap_.front();
  heap_pos_[top] = -1;
  heap_.front() = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_pos_[heap_.front()] = 0;
    heap_down(0);
  }
  return top;
}

void CdclSolver::heap_up(std::size_t i) {
  const auto v = heap_[i];
  while (i > 0) {
    const std::size_t parent = (i - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

void CdclSolver::heap_down(std::size_t i) {
  const auto v = heap_[i];
  while (true) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

}  // namespace ltl
