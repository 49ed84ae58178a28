#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ltl/formula.hpp"

namespace ltl {

/// Exact non-negative fraction, used for impurities so that ties are exact.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den <=> static_cast<__int128>(b.num) * a.den;
  }
};

/// Boolean feature vectors (one column per primitive) with accept/reject labels.
struct FeatureMatrix {
  std::vector<std::vector<char>> rows;
  std::vector<char> labels;  // 1 = accept (positive word)

  std::size_t row_count() const { return rows.size(); }
  std::size_t feature_count() const { return rows.empty() ? 0 : rows.front().size(); }
};

/// Weighted Gini impurity of the two branches `feature` induces on `rows`.
Rational gini_split(const FeatureMatrix& matrix, std::span<const std::size_t> rows, std::size_t feature);

/// Binary tree with primitive tests at inner nodes and accept/reject leaves.
/// Built bottom-up: children precede parents and the last node is the root.
class DecisionTree {
 public:
  struct Node {
    bool leaf = true;
    bool accept = false;        // leaves
    std::size_t feature = 0;    // inner nodes
    int on_true = -1;
    int on_false = -1;
  };

  static DecisionTree leaf(bool accept);

  int add_leaf(bool accept);
  int add_inner(std::size_t feature, int on_true, int on_false);
  const Node& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }
  std::size_t node_count() const { return nodes_.size(); }
  int root() const { return static_cast<int>(nodes_.size()) - 1; }
  std::size_t inner_count() const;
  std::size_t depth() const;
  bool classify(std::span<const char> features) const;

 private:
  std::vector<Node> nodes_;
};

/// Recursive best-Gini induction without pruning; ties go to the lowest
/// feature index. Throws InvariantViolation on contradictory rows.
DecisionTree learn_tree(const FeatureMatrix& matrix);

/// Disjunction over accept paths of the conjunction of path literals.
/// Constants are used when `ops` enables them; otherwise true is spelled
/// `p | !p` over `fallback_prop`.
SyntaxDag tree_to_formula(const DecisionTree& tree, std::span<const SyntaxDag> primitives,
                          const OperatorSet& ops, const std::string& fallback_prop);

}  // namespace ltl
