#pragma once

#include <cstddef>
#include <vector>

#include "ltl/formula.hpp"
#include "ltl/lasso.hpp"

namespace ltl {

/// Truth value of every DAG node at every position 0..|uv|-1 of a lasso word.
class ValuationTable {
 public:
  ValuationTable(std::size_t nodes, std::size_t positions) : positions_(positions), bits_(nodes * positions, 0) {}
  bool at(int node, std::size_t t) const { return bits_[static_cast<std::size_t>(node) * positions_ + t]; }
  void set(int node, std::size_t t, bool v) { bits_[static_cast<std::size_t>(node) * positions_ + t] = v; }
  std::size_t positions() const { return positions_; }

 private:
  std::size_t positions_;
  std::vector<char> bits_;
};

/// A formula whose propositions are resolved against an alphabet.
/// Throws AlphabetMismatch on construction for unknown propositions.
class BoundFormula {
 public:
  BoundFormula(const SyntaxDag& formula, const PropositionAlphabet& alphabet);

  /// Dynamic program over (node, position) in identifier order.
  ValuationTable table(const LassoWord& word) const;
  /// Valuation of the root on the suffix starting at `at` (any position; normalized internally).
  bool evaluate(const LassoWord& word, std::size_t at = 0) const;

  const SyntaxDag& formula() const { return *formula_; }

 private:
  const SyntaxDag* formula_;
  std::vector<std::size_t> prop_bit_;
};

bool evaluate(const SyntaxDag& formula, const LassoWord& word, const PropositionAlphabet& alphabet,
              std::size_t at = 0);

/// Every positive satisfies and every negative violates the formula at position 0.
bool is_consistent(const SyntaxDag& formula, const Sample& sample);

}  // namespace ltl
