#include "ltl/decision_tree.hpp"

#include <algorithm>
#include <numeric>

#include "ltl/error.hpp"

namespace ltl {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (den == 0) throw Error("rational with zero denominator");
  if (den < 0) num = -num, den = -den;
  const auto g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) num /= g, den /= g;
  if (num == 0) den = 1;
}

Rational gini_split(const FeatureMatrix& matrix, std::span<const std::size_t> rows, std::size_t feature) {
  if (rows.empty()) throw Error("gini_split needs at least one row");
  std::int64_t count[2] = {0, 0}, accept[2] = {0, 0};
  for (std::size_t r : rows) {
    const int side = matrix.rows[r][feature] ? 1 : 0;
    ++count[side];
    accept[side] += matrix.labels[r] ? 1 : 0;
  }
  // sum_b (n_b / N) * (1 - a_b^2/n_b^2 - r_b^2/n_b^2) = sum_b 2 a_b r_b / (n_b N)
  const std::int64_t total = static_cast<std::int64_t>(rows.size());
  std::int64_t num = 0;
  std::int64_t den = total;
  for (int s = 0; s < 2; ++s)
    if (count[s]) den *= count[s];
  for (int s = 0; s < 2; ++s) {
    if (!count[s]) continue;
    const std::int64_t other = count[1 - s] ? count[1 - s] : 1;
    num += 2 * accept[s] * (count[s] - accept[s]) * other;
  }
  return Rational(num, den);
}

DecisionTree DecisionTree::leaf(bool accept) {
  DecisionTree t;
  t.add_leaf(accept);
  return t;
}

int DecisionTree::add_leaf(bool accept) {
  nodes_.push_back(Node{true, accept, 0, -1, -1});
  return root();
}

int DecisionTree::add_inner(std::size_t feature, int on_true, int on_false) {
  if (on_true < 0 || on_true >= static_cast<int>(nodes_.size()) || on_false < 0 ||
      on_false >= static_cast<int>(nodes_.size()))
    throw InvariantViolation("decision tree children must be added before their parent");
  nodes_.push_back(Node{false, false, feature, on_true, on_false});
  return root();
}

std::size_t DecisionTree::inner_count() const {
  return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return !n.leaf; }));
}

std::size_t DecisionTree::depth() const {
  auto go = [&](auto&& self, int i) -> std::size_t {
    const Node& n = node(i);
    if (n.leaf) return 0;
    return 1 + std::max(self(self, n.on_true), self(self, n.on_false));
  };
  return nodes_.empty() ? 0 : go(go, root());
}

bool DecisionTree::classify(std::span<const char> features) const {
  int i = root();
  while (!node(i).leaf) i = features[node(i).feature] ? node(i).on_true : node(i).on_false;
  return node(i).accept;
}

DecisionTree learn_tree(const FeatureMatrix& matrix) {
  DecisionTree tree;
  if (matrix.row_count() == 0) {
    tree.add_leaf(true);
    return tree;
  }
  const std::size_t features = matrix.feature_count();
  auto grow = [&](auto&& self, const std::vector<std::size_t>& rows) -> int {
    const auto accepts = std::count_if(rows.begin(), rows.end(), [&](std::size_t r) { return matrix.labels[r]; });
    if (accepts == 0 || static_cast<std::size_t>(accepts) == rows.size()) return tree.add_leaf(accepts != 0);

    std::optional<std::size_t> best;
    Rational best_impurity;
    for (std::size_t f = 0; f < features; ++f) {
      const auto ones = std::count_if(rows.begin(), rows.end(), [&](std::size_t r) { return matrix.rows[r][f]; });
      if (ones == 0 || static_cast<std::size_t>(ones) == rows.size()) continue;
      const Rational g = gini_split(matrix, rows, f);
      if (!best || g < best_impurity) {
        best = f;
        best_impurity = g;
      }
    }
    if (!best) throw InvariantViolation("rows with identical features carry different labels");
    std::vector<std::size_t> on_true, on_false;
    for (std::size_t r : rows) (matrix.rows[r][*best] ? on_true : on_false).push_back(r);
    const int t = self(self, on_true);
    const int f = self(self, on_false);
    return tree.add_inner(*best, t, f);
  };
  std::vector<std::size_t> all(matrix.row_count());
  std::iota(all.begin(), all.end(), std::size_t{0});
  grow(grow, all);
  return tree;
}

SyntaxDag tree_to_formula(const DecisionTree& tree, std::span<const SyntaxDag> primitives, const OperatorSet& ops,
                          const std::string& fallback_prop) {
  DagBuilder b;
  auto truth = [&]() {
    if (ops.contains(Op::True)) return b.constant(true);
    const int p = b.prop(fallback_prop);
    return b.binary(Op::Or, p, b.unary(Op::Not, p));
  };
  auto falsity = [&]() {
    if (ops.contains(Op::False)) return b.constant(false);
    return b.unary(Op::Not, truth());
  };

  std::vector<int> imported(primitives.size(), -1);
  auto primitive = [&](std::size_t f) {
    if (f >= primitives.size()) throw InvariantViolation("tree refers to a missing primitive");
    if (imported[f] < 0) imported[f] = b.import(primitives[f]);
    return imported[f];
  };

  std::optional<int> disjunction;
  std::vector<std::pair<std::size_t, bool>> path;
  auto walk = [&](auto&& self, int i) -> void {
    const auto& n = tree.node(i);
    if (n.leaf) {
      if (!n.accept) return;
      std::optional<int> conj;
      for (auto [f, positive] : path) {
        int lit = primitive(f);
        if (!positive) lit = b.unary(Op::Not, lit);
        conj = conj ? b.binary(Op::And, *conj, lit) : lit;
      }
      const int term = conj ? *conj : truth();
      disjunction = disjunction ? b.binary(Op::Or, *disjunction, term) : term;
      return;
    }
    path.emplace_back(n.feature, true);
    self(self, n.on_true);
    path.back().second = false;
    self(self, n.on_false);
    path.pop_back();
  };
  walk(walk, tree.root());
  return b.build(disjunction ? *disjunction : falsity());
}

}  // namespace ltl
