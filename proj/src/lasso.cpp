#include "ltl/lasso.hpp"

#include <numeric>
#include <string>

#include "ltl/error.hpp"

namespace ltl {

LassoWord::LassoWord(std::vector<Symbol> prefix, std::vector<Symbol> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
  if (period_.empty()) throw Error("lasso word needs a nonempty period");
}

Symbol LassoWord::at(std::size_t t) const {
  t = normalize_position(t, prefix_.size(), period_.size());
  return t < prefix_.size() ? prefix_[t] : period_[t - prefix_.size()];
}

bool same_omega_word(const LassoWord& a, const LassoWord& b) {
  const std::size_t horizon = a.prefix_length() + b.prefix_length() +
                              2 * std::lcm(a.period_length(), b.period_length());
  for (std::size_t t = 0; t < horizon; ++t)
    if (a.at(t) != b.at(t)) return false;
  return true;
}

std::size_t Sample::total_length() const {
  std::size_t total = 0;
  for (const auto& w : positives) total += w.length();
  for (const auto& w : negatives) total += w.length();
  return total;
}

std::optional<std::pair<std::size_t, std::size_t>> Sample::find_contradiction() const {
  for (std::size_t i = 0; i < positives.size(); ++i)
    for (std::size_t j = 0; j < negatives.size(); ++j)
      if (same_omega_word(positives[i], negatives[j])) return std::make_pair(i, j);
  return std::nullopt;
}

void Sample::validate() const {
  const Symbol mask = alphabet.size() >= 64 ? ~Symbol{0} : ((Symbol{1} << alphabet.size()) - 1);
  auto check = [&](const LassoWord& w) {
    for (std::size_t t = 0; t < w.length(); ++t)
      if (w.at(t) & ~mask) throw Error("symbol uses a proposition outside the alphabet");
  };
  for (const auto& w : positives) check(w);
  for (const auto& w : negatives) check(w);
  if (auto c = find_contradiction())
    throw ContradictorySample("positive word " + std::to_string(c->first + 1) + " and negative word " +
                              std::to_string(c->second + 1) + " denote the same infinite word");
}

std::vector<std::pair<const LassoWord*, bool>> Sample::labeled_words() const {
  std::vector<std::pair<const LassoWord*, bool>> out;
  out.reserve(word_count());
  for (const auto& w : positives) out.emplace_back(&w, true);
  for (const auto& w : negatives) out.emplace_back(&w, false);
  return out;
}

}  // namespace ltl
