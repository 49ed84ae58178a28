#pragma once

#include <iosfwd>
#include <optional>
#include <span>

#include "ltl/decision_tree.hpp"
#include "ltl/formula.hpp"
#include "ltl/lasso.hpp"

namespace ltl {

struct SampleFile {
  Sample sample;
  std::optional<OperatorSet> ops;
};

/// Reads the line-oriented sample format:
///
///   # comment
///   .props: p,q
///   .ops: !,|,&,->,X,U,F,G      (optional)
///   .positive:
///   10;01|11
///   .negative:
///   00|00
///
/// Throws FormatError (with 1-based line) or ContradictorySample.
SampleFile read_sample_file(std::istream& in);
Sample read_sample(std::istream& in);

void write_sample(const Sample& sample, std::ostream& out, const std::optional<OperatorSet>& ops = std::nullopt);

/// `10;01|11` style text of one word.
std::string format_word(const LassoWord& word, std::size_t alphabet_size);

/// `formula := ...` line(s) followed by `size := n`.
void write_formula_report(std::ostream& out, std::span<const SyntaxDag> formulas);

/// One node per line, two spaces of indentation per level; `+` marks the
/// branch taken when the node's primitive holds, `-` the other.
void write_tree(std::ostream& out, const DecisionTree& tree, std::span<const SyntaxDag> primitives);

}  // namespace ltl
