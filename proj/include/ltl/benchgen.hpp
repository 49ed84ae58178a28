#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ltl/formula.hpp"
#include "ltl/lasso.hpp"

namespace ltl {

struct NamedPattern {
  std::string category;  // Absence, Existence or Universality
  SyntaxDag formula;
};

/// The nine common property patterns (three per category).
std::vector<NamedPattern> pattern_catalog();

struct BenchmarkSpec {
  SyntaxDag pattern = SyntaxDag::atom("p0");
  std::size_t sample_size = 50;
  /// |u| + |v| of every word; |u| is drawn uniformly from 0..length-1.
  std::size_t word_length = 10;
  std::size_t noise_propositions = 1;
  std::uint64_t seed = 1;
  /// Overrides the default alphabet (pattern propositions sorted by name, then noise0, noise1, ...).
  std::optional<PropositionAlphabet> alphabet;
  /// Consecutive rejected draws tolerated before giving up.
  std::size_t draw_budget = 1'000'000;

  void validate() const;
};

PropositionAlphabet benchmark_alphabet(const BenchmarkSpec& spec);

/// Random words classified by the pattern until ceil(size/2) positives and
/// floor(size/2) negatives are collected. Throws Error after `draw_budget`
/// rejected draws in a row.
Sample generate_sample(const BenchmarkSpec& spec);

struct SuiteEntry {
  std::size_t pattern_index = 0;
  BenchmarkSpec spec;
  Sample sample;
  /// Sizes above 500 are slow for the exact learner.
  bool long_running = false;
};

/// Every catalog pattern crossed with `sizes` and `seeds`.
std::vector<SuiteEntry> benchmark_suite(const std::vector<std::size_t>& sizes, const std::vector<std::uint64_t>& seeds,
                                        std::size_t word_length = 10, std::size_t noise_propositions = 1);

inline const std::vector<std::size_t> kDeskScaleSizes{50, 200, 500};

}  // namespace ltl
