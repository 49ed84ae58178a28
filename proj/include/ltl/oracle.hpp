#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ltl/formula.hpp"
#include "ltl/lasso.hpp"

namespace ltl {

/// Brute-force search space: all formulas with at most `max_size` distinct
/// subformulas over `alphabet` and `ops`. Practical up to size 4-5.
struct EnumerationBudget {
  int max_size = 1;
  OperatorSet ops = OperatorSet::standard();
  PropositionAlphabet alphabet;
};

/// Calls `visit` once per formula (maximally shared DAG), in nondecreasing
/// size order, until it returns false.
void enumerate_formulas(const EnumerationBudget& budget, const std::function<bool(const SyntaxDag&)>& visit);
std::vector<SyntaxDag> enumerate_formulas(const EnumerationBudget& budget);

struct OracleResult {
  int size = 0;
  /// Every consistent formula of that size.
  std::vector<SyntaxDag> formulas;
};

/// Smallest size with a consistent formula, or nullopt within the budget.
std::optional<OracleResult> oracle_minimal(const Sample& sample, const EnumerationBudget& budget);

}  // namespace ltl
