#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ltl/decision_tree.hpp"
#include "ltl/exact_learner.hpp"
#include "ltl/lasso.hpp"

namespace ltl {

enum class Strategy { Alpha, Beta };

/// Which words alpha boosts after each round.
enum class CoverageRule {
  /// A positive is covered once some primitive accepts it, a negative once
  /// some primitive rejects it.
  Word,
  /// A word is covered once every (positive, negative) pair it belongs to is separated.
  Pair,
};

struct SamplingConfig {
  Strategy strategy = Strategy::Alpha;
  /// k: words per side (alpha) or pairs per round (beta).
  int subset_size = 3;
  /// Weight multiplier for uncovered words (alpha).
  double boost = 2.0;
  /// Rounds without new separated pairs before weights reset to uniform (alpha).
  int restart = 32;
  CoverageRule coverage = CoverageRule::Word;
  std::uint64_t seed = 1;
  /// Hard cap on strategy rounds; BudgetExhausted beyond it.
  int max_rounds = 100000;

  void validate() const;
};

/// Per-round progress of a primitive strategy.
struct RoundStats {
  int round = 0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  int primitive_size = 0;
  bool new_primitive = false;
  std::size_t unseparated_pairs = 0;
  double seconds = 0.0;
};

/// LTL primitives with their valuations on the sample words.
struct PrimitiveSet {
  std::vector<SyntaxDag> primitives;
  /// truth[k][w]: primitive k on word w (positives first, then negatives).
  std::vector<std::vector<char>> truth;
  std::vector<RoundStats> rounds;

  /// True if every (positive, negative) pair is separated by some primitive.
  bool separates_all(const Sample& sample) const;
  /// Adds a primitive unless an identical one is present; returns whether it was added.
  bool add(const SyntaxDag& primitive, const Sample& sample);
};

PrimitiveSet strategy_alpha(const Sample& sample, const LearnerConfig& exact, const SamplingConfig& config);
PrimitiveSet strategy_beta(const Sample& sample, const LearnerConfig& exact, const SamplingConfig& config);

/// One row per word (positives first) of primitive valuations, labeled by membership in P.
/// Throws InvariantViolation unless the primitives separate every pair.
FeatureMatrix featurize(const Sample& sample, const PrimitiveSet& primitives);

struct DtConfig {
  LearnerConfig exact;
  SamplingConfig sampling;
};

struct DtResult {
  DecisionTree tree;
  SyntaxDag formula;
  PrimitiveSet primitives;
};

/// Primitive generation, tree induction and formula extraction. The returned
/// formula is checked for consistency before returning.
DtResult learn_dt(const Sample& sample, const DtConfig& config);

}  // namespace ltl
