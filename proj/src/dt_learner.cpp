#include "ltl/dt_learner.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

#include "ltl/error.hpp"
#include "ltl/evaluate.hpp"

namespace ltl {

namespace {

using Clock = std::chrono::steady_clock;

/// Tracks which (positive, negative) pairs are separated.
class PairCoverage {
 public:
  PairCoverage(std::size_t positives, std::size_t negatives)
      : pos_(positives), neg_(negatives), separated_(positives * negatives, 0), open_(positives * negatives) {}

  void absorb(const std::vector<char>& truth) {
    for (std::size_t i = 0; i < pos_; ++i) {
      if (!truth[i]) continue;
      for (std::size_t j = 0; j < neg_; ++j) {
        char& s = separated_[i * neg_ + j];
        if (!s && !truth[pos_ + j]) {
          s = 1;
          --open_;
        }
      }
    }
  }
  bool separated(std::size_t i, std::size_t j) const { return separated_[i * neg_ + j]; }
  std::size_t open() const { return open_; }

 private:
  std::size_t pos_, neg_;
  std::vector<char> separated_;
  std::size_t open_;
};

/// k distinct indices drawn with probability proportional to `weights`.
std::vector<std::size_t> weighted_subset(const std::vector<double>& weights, std::size_t k, std::mt19937_64& rng) {
  std::vector<double> w = weights;
  std::vector<std::size_t> out;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t draw = 0; draw < k; ++draw) {
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    double target = unit(rng) * total;
    std::size_t pick = w.size();
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] <= 0.0) continue;
      pick = i;
      if (target < w[i]) break;
      target -= w[i];
    }
    out.push_back(pick);
    w[pick] = 0.0;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Sample sub_sample(const Sample& sample, const std::vector<std::size_t>& pos, const std::vector<std::size_t>& neg) {
  Sample sub{sample.alphabet, {}, {}};
  for (auto i : pos) sub.positives.push_back(sample.positives[i]);
  for (auto j : neg) sub.negatives.push_back(sample.negatives[j]);
  return sub;
}

SyntaxDag learn_primitive(const Sample& sub, const LearnerConfig& exact) {
  LearnerConfig single = exact;
  single.count = 1;
  return learn_minimal(sub, single).formulas.front();
}

}  // namespace

void SamplingConfig::validate() const {
  if (subset_size < 1) throw Error("subset size must be at least 1");
  if (!(boost > 1.0)) throw Error("boost factor must exceed 1");
  if (restart < 1) throw Error("restart threshold must be at least 1");
  if (max_rounds < 1) throw Error("max_rounds must be at least 1");
}

bool PrimitiveSet::add(const SyntaxDag& primitive, const Sample& sample) {
  const std::string text = render(primitive);
  for (const auto& p : primitives)
    if (render(p) == text) return false;
  BoundFormula bound(primitive, sample.alphabet);
  std::vector<char> row;
  for (const auto& [w, positive] : sample.labeled_words()) row.push_back(bound.evaluate(*w));
  primitives.push_back(primitive);
  truth.push_back(std::move(row));
  return true;
}

bool PrimitiveSet::separates_all(const Sample& sample) const {
  PairCoverage cov(sample.positives.size(), sample.negatives.size());
  for (const auto& row : truth) cov.absorb(row);
  return cov.open() == 0;
}

PrimitiveSet strategy_alpha(const Sample& sample, const LearnerConfig& exact, const SamplingConfig& config) {
  config.validate();
  sample.validate();
  PrimitiveSet result;
  const std::size_t np = sample.positives.size(), nn = sample.negatives.size();
  PairCoverage cov(np, nn);
  if (cov.open() == 0) return result;

  std::mt19937_64 rng(config.seed);
  const std::size_t kp = std::min({static_cast<std::size_t>(config.subset_size), np, nn});
  const std::size_t kn = kp;
  std::vector<double> wp(np, 1.0), wn(nn, 1.0);
  std::vector<char> pos_hit(np, 0), neg_hit(nn, 0);
  int stale = 0;

  for (int round = 1; cov.open() > 0; ++round) {
    if (round > config.max_rounds)
      throw BudgetExhausted("strategy alpha did not separate all pairs within " + std::to_string(config.max_rounds) +
                            " rounds");
    const auto start = Clock::now();
    const auto pos = weighted_subset(wp, kp, rng);
    const auto neg = weighted_subset(wn, kn, rng);
    const SyntaxDag phi = learn_primitive(sub_sample(sample, pos, neg), exact);
    const std::size_t before = cov.open();
    const bool added = result.add(phi, sample);
    if (added) {
      const auto& row = result.truth.back();
      cov.absorb(row);
      for (std::size_t i = 0; i < np; ++i) pos_hit[i] |= row[i];
      for (std::size_t j = 0; j < nn; ++j) neg_hit[j] |= !row[np + j];
    }
    result.rounds.push_back(RoundStats{round, pos.size(), neg.size(), static_cast<int>(phi.size()), added, cov.open(),
                                       std::chrono::duration<double>(Clock::now() - start).count()});
    stale = cov.open() < before ? 0 : stale + 1;
    if (stale >= config.restart) {
      std::fill(wp.begin(), wp.end(), 1.0);
      std::fill(wn.begin(), wn.end(), 1.0);
      stale = 0;
      continue;
    }

    // Boost the words that are still misclassified.
    for (std::size_t i = 0; i < np; ++i) {
      bool covered = pos_hit[i];
      if (config.coverage == CoverageRule::Pair) {
        covered = true;
        for (std::size_t j = 0; j < nn && covered; ++j) covered = cov.separated(i, j);
      }
      if (!covered) wp[i] *= config.boost;
    }
    for (std::size_t j = 0; j < nn; ++j) {
      bool covered = neg_hit[j];
      if (config.coverage == CoverageRule::Pair) {
        covered = true;
        for (std::size_t i = 0; i < np && covered; ++i) covered = cov.separated(i, j);
      }
      if (!covered) wn[j] *= config.boost;
    }
    for (auto* w : {&wp, &wn}) {
      const double top = *std::max_element(w->begin(), w->end());
      if (top > 1e100)
        for (double& x : *w) x /= top;
    }
  }
  return result;
}

PrimitiveSet strategy_beta(const Sample& sample, const LearnerConfig& exact, const SamplingConfig& config) {
  config.validate();
  sample.validate();
  PrimitiveSet result;
  const std::size_t np = sample.positives.size(), nn = sample.negatives.size();
  std::vector<std::pair<std::size_t, std::size_t>> remaining;
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < nn; ++j) remaining.emplace_back(i, j);

  std::mt19937_64 rng(config.seed);
  for (int round = 1; !remaining.empty(); ++round) {
    if (round > config.max_rounds)
      throw BudgetExhausted("strategy beta did not separate all pairs within " + std::to_string(config.max_rounds) +
                            " rounds");
    const auto start = Clock::now();
    const std::size_t k = std::min(static_cast<std::size_t>(config.subset_size), remaining.size());
    // Partial Fisher-Yates: the first k entries become a uniform selection.
    for (std::size_t s = 0; s < k; ++s) {
      std::uniform_int_distribution<std::size_t> pick(s, remaining.size() - 1);
      std::swap(remaining[s], remaining[pick(rng)]);
    }
    std::vector<std::size_t> pos, neg;
    for (std::size_t s = 0; s < k; ++s) {
      pos.push_back(remaining[s].first);
      neg.push_back(remaining[s].second);
    }
    std::sort(pos.begin(), pos.end());
    pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
    std::sort(neg.begin(), neg.end());
    neg.erase(std::unique(neg.begin(), neg.end()), neg.end());

    const SyntaxDag phi = learn_primitive(sub_sample(sample, pos, neg), exact);
    const bool added = result.add(phi, sample);
    BoundFormula bound(phi, sample.alphabet);
    std::vector<char> pos_truth(np), neg_truth(nn);
    for (std::size_t i = 0; i < np; ++i) pos_truth[i] = bound.evaluate(sample.positives[i]);
    for (std::size_t j = 0; j < nn; ++j) neg_truth[j] = bound.evaluate(sample.negatives[j]);
    std::erase_if(remaining, [&](const auto& pr) { return pos_truth[pr.first] && !neg_truth[pr.second]; });
    result.rounds.push_back(RoundStats{round, pos.size(), neg.size(), static_cast<int>(phi.size()), added,
                                       remaining.size(),
                                       std::chrono::duration<double>(Clock::now() - start).count()});
  }
  return result;
}

FeatureMatrix featurize(const Sample& sample, const PrimitiveSet& primitives) {
  if (!primitives.separates_all(sample))
    throw InvariantViolation("primitives do not separate every positive/negative pair");
  FeatureMatrix m;
  std::size_t w = 0;
  for (const auto& [word, positive] : sample.labeled_words()) {
    std::vector<char> row;
    for (const auto& t : primitives.truth) row.push_back(t[w]);
    m.rows.push_back(std::move(row));
    m.labels.push_back(positive);
    ++w;
  }
  return m;
}

DtResult learn_dt(const Sample& sample, const DtConfig& config) {
  config.exact.validate();
  PrimitiveSet primitives = config.sampling.strategy == Strategy::Alpha
                                ? strategy_alpha(sample, config.exact, config.sampling)
                                : strategy_beta(sample, config.exact, config.sampling);
  const FeatureMatrix matrix = featurize(sample, primitives);
  DecisionTree tree = learn_tree(matrix);
  SyntaxDag formula = tree_to_formula(tree, primitives.primitives, config.exact.ops, sample.alphabet.name(0));
  if (!is_consistent(formula, sample))
    throw InvariantViolation("tree formula " + render(formula) + " is not consistent with the sample");
  return DtResult{std::move(tree), std::move(formula), std::move(primitives)};
}

}  // namespace ltl
