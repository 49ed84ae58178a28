#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ltl/formula.hpp"

namespace ltl {

/// A letter of 2^P: bit i set iff proposition i of the alphabet holds.
using Symbol = std::uint64_t;

/// Maps a position of u v^omega onto the equivalent position inside uv.
constexpr std::size_t normalize_position(std::size_t t, std::size_t prefix_len, std::size_t period_len) {
  if (t < prefix_len + period_len) return t;
  return prefix_len + (t - prefix_len) % period_len;
}

/// Ultimately periodic word u v^omega with nonempty period.
class LassoWord {
 public:
  LassoWord(std::vector<Symbol> prefix, std::vector<Symbol> period);

  const std::vector<Symbol>& prefix() const { return prefix_; }
  const std::vector<Symbol>& period() const { return period_; }
  std::size_t prefix_length() const { return prefix_.size(); }
  std::size_t period_length() const { return period_.size(); }
  /// |uv|
  std::size_t length() const { return prefix_.size() + period_.size(); }
  /// Letter at an arbitrary position of the infinite word.
  Symbol at(std::size_t t) const;

  friend bool operator==(const LassoWord&, const LassoWord&) = default;

 private:
  std::vector<Symbol> prefix_;
  std::vector<Symbol> period_;
};

/// True if both lassos denote the same infinite word.
bool same_omega_word(const LassoWord& a, const LassoWord& b);

/// Positive and negative examples over an ordered alphabet.
struct Sample {
  PropositionAlphabet alphabet;
  std::vector<LassoWord> positives;
  std::vector<LassoWord> negatives;

  std::size_t word_count() const { return positives.size() + negatives.size(); }
  /// Sum of |u| + |v| over all words.
  std::size_t total_length() const;
  /// First (positive, negative) index pair denoting the same omega-word, if any.
  std::optional<std::pair<std::size_t, std::size_t>> find_contradiction() const;
  /// Throws ContradictorySample or Error (symbols outside the alphabet).
  void validate() const;
  /// Positives followed by negatives, with the matching labels.
  std::vector<std::pair<const LassoWord*, bool>> labeled_words() const;
};

}  // namespace ltl
