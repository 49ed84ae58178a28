#include "ltl/benchgen.hpp"

#include <algorithm>
#include <random>

#include "ltl/error.hpp"
#include "ltl/evaluate.hpp"

namespace ltl {

std::vector<NamedPattern> pattern_catalog() {
  return {
      {"Absence", parse("G (! p0)")},
      {"Absence", parse("F p1 -> (! p0 U p1)")},
      {"Absence", parse("G (p1 -> G (! p0))")},
      {"Existence", parse("F p0")},
      {"Existence", parse("G (! p0 | F (p0 & F p1))")},
      {"Existence", parse("G (p0 & (! p1 -> (! p1 U (p2 & ! p1))))")},
      {"Universality", parse("G p0")},
      {"Universality", parse("F p1 -> (p0 U p1)")},
      {"Universality", parse("G (p1 -> G p0)")},
  };
}

void BenchmarkSpec::validate() const {
  if (word_length < 2) throw Error("benchmark word length must be at least 2");
  if (sample_size < 2) throw Error("benchmark sample size must be at least 2");
}

PropositionAlphabet benchmark_alphabet(const BenchmarkSpec& spec) {
  if (spec.alphabet) {
    for (const auto& p : spec.pattern.propositions())
      if (!spec.alphabet->index_of(p))
        throw AlphabetMismatch("pattern proposition '" + p + "' is missing from the benchmark alphabet");
    return *spec.alphabet;
  }
  auto names = spec.pattern.propositions();
  std::sort(names.begin(), names.end());
  for (std::size_t k = 0; k < spec.noise_propositions; ++k) names.push_back("noise" + std::to_string(k));
  return PropositionAlphabet(std::move(names));
}

Sample generate_sample(const BenchmarkSpec& spec) {
  spec.validate();
  Sample sample{benchmark_alphabet(spec), {}, {}};
  const BoundFormula pattern(spec.pattern, sample.alphabet);
  const std::size_t want_pos = (spec.sample_size + 1) / 2;
  const std::size_t want_neg = spec.sample_size / 2;
  const std::size_t props = sample.alphabet.size();

  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<std::size_t> prefix_len(0, spec.word_length - 1);
  std::uniform_int_distribution<Symbol> symbol(0, props >= 64 ? ~Symbol{0} : (Symbol{1} << props) - 1);

  std::size_t idle = 0;
  while (sample.positives.size() < want_pos || sample.negatives.size() < want_neg) {
    if (idle == spec.draw_budget)
      throw Error("pattern " + render(spec.pattern) + " starved the generator: " +
                  std::to_string(sample.positives.size()) + " positives and " +
                  std::to_string(sample.negatives.size()) + " negatives, then " + std::to_string(idle) +
                  " draws in a row were rejected");
    const std::size_t u = prefix_len(rng);
    std::vector<Symbol> prefix(u), period(spec.word_length - u);
    for (auto& s : prefix) s = symbol(rng);
    for (auto& s : period) s = symbol(rng);
    LassoWord word(std::move(prefix), std::move(period));
    auto& side = pattern.evaluate(word) ? sample.positives : sample.negatives;
    const std::size_t want = &side == &sample.positives ? want_pos : want_neg;
    if (side.size() < want) {
      side.push_back(std::move(word));
      idle = 0;
    } else {
      ++idle;
    }
  }
  return sample;
}

std::vector<SuiteEntry> benchmark_suite(const std::vector<std::size_t>& sizes, const std::vector<std::uint64_t>& seeds,
                                        std::size_t word_length, std::size_t noise_propositions) {
  std::vector<SuiteEntry> out;
  const auto catalog = pattern_catalog();
  for (std::size_t p = 0; p < catalog.size(); ++p) {
    for (std::size_t size : sizes) {
      for (std::uint64_t seed : seeds) {
        BenchmarkSpec spec{catalog[p].formula, size, word_length, noise_propositions, seed, std::nullopt};
        Sample sample = generate_sample(spec);
        out.push_back(SuiteEntry{p, std::move(spec), std::move(sample), size > 500});
      }
    }
  }
  return out;
}

}  // namespace ltl
