#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ltl/cnf.hpp"
#include "ltl/formula.hpp"
#include "ltl/lasso.hpp"

namespace ltl {

/// A node label of the encoding: a proposition (by alphabet index) or an operator.
struct Label {
  Op op = Op::Prop;
  std::size_t prop = 0;

  friend bool operator==(const Label&, const Label&) = default;
};

/// Dense numbering of the encoding variables:
///   x[i, lambda]  node i carries label lambda        (1 <= i <= n)
///   l[i, j]       node j is the left child of i      (2 <= i <= n, 1 <= j < i)
///   r[i, j]       node j is the right child of i
///   y[w, i, t]    subformula i holds at position t of word w
/// followed by auxiliary variables handed out by fresh().
class VariablePool {
 public:
  VariablePool(int size_bound, const PropositionAlphabet& alphabet, const OperatorSet& ops,
               std::vector<std::size_t> word_lengths);

  int size_bound() const { return n_; }
  /// Propositions in alphabet order, then the enabled operators.
  const std::vector<Label>& labels() const { return labels_; }
  std::optional<std::size_t> label_index(const Label& label) const;
  const PropositionAlphabet& alphabet() const { return alphabet_; }
  const OperatorSet& operators() const { return ops_; }
  std::size_t word_count() const { return word_lengths_.size(); }
  std::size_t word_length(std::size_t word) const { return word_lengths_.at(word); }

  int x(int node, std::size_t label) const;
  int l(int node, int child) const;
  int r(int node, int child) const;
  int y(std::size_t word, int node, std::size_t t) const;

  /// Number of x, l, r and y variables.
  int primary_count() const { return primary_; }
  int num_vars() const { return next_ - 1; }
  int fresh() { return next_++; }
  /// Readable name such as `x[3,G]`; empty for auxiliary variables.
  std::string name(int var) const;

  /// n*|P u C| + 2*sum_{i=2..n}(i-1) + n*sum_w |u_w v_w|.
  static long long closed_form_count(int size_bound, std::size_t label_count,
                                     const std::vector<std::size_t>& word_lengths);

 private:
  int n_;
  PropositionAlphabet alphabet_;
  OperatorSet ops_;
  std::vector<Label> labels_;
  std::vector<std::size_t> word_lengths_;
  std::vector<int> word_base_;
  int x_base_ = 1, l_base_ = 0, r_base_ = 0, y_base_ = 0;
  int primary_ = 0;
  int next_ = 1;
};

/// How the per-word constraints are written.
enum class EncodingStyle {
  /// Channel variables carry the value of each node's left/right child, and
  /// temporal operators use step recurrences. Same models on the x/l/r/y
  /// variables as Tabular, far fewer clauses.
  Compact,
  /// Direct clausal form of the guarded equivalences, one guard per
  /// (node, label, left child, right child) combination.
  Tabular,
};

/// Clauses of the propositional formula, grouped by origin.
struct PropFormula {
  std::vector<Clause> structure;
  std::vector<std::vector<Clause>> words;
  std::vector<Clause> roots;
  std::vector<Clause> constraints;

  std::size_t clause_count() const;
  CnfInstance to_cnf(const VariablePool& pool) const;
};

/// Exactly one label per node, exactly one left and one right child for
/// nodes 2..n, and node 1 a leaf.
std::vector<Clause> encode_structure(const VariablePool& pool);

/// Periodic positions strictly "between" t and t2 in the loop of a lasso:
/// {t..t2-1} if t < t2, else {prefix_len..t2-1} u {t..total_len-1}.
/// Throws Error if t or t2 lies outside [prefix_len, total_len).
std::vector<std::size_t> between_positions(std::size_t t, std::size_t t2, std::size_t prefix_len,
                                           std::size_t total_len);

/// Constraints tying y[word, ., .] to the valuation of the encoded formula.
std::vector<Clause> encode_word(VariablePool& pool, std::size_t word_index, const LassoWord& word,
                                EncodingStyle style = EncodingStyle::Compact);

struct Encoding {
  VariablePool pool;
  PropFormula formula;

  CnfInstance cnf() const { return formula.to_cnf(pool); }
};

/// Formula satisfiable iff some size-n formula over `ops` is consistent with the sample.
Encoding encode_sample(int size_bound, const Sample& sample, const OperatorSet& ops,
                       EncodingStyle style = EncodingStyle::Compact);

/// Reads the syntax DAG off a model. Throws InvariantViolation when the
/// exactly-one constraints do not hold in the model.
SyntaxDag decode_model(const std::vector<bool>& model, const VariablePool& pool);

/// The true x literals plus the true l (non-leaf) and r (binary) literals:
/// exactly the part of a model that determines the decoded DAG.
std::vector<Literal> structure_literals(const std::vector<bool>& model, const VariablePool& pool);

}  // namespace ltl
