// Acceptance harness: one PASS/FAIL line per criterion, exit status 1 if a
// gated criterion fails. Criterion 5 is reported only.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "ltl/benchgen.hpp"
#include "ltl/dt_learner.hpp"
#include "ltl/error.hpp"
#include "ltl/exact_learner.hpp"
#include "ltl/oracle.hpp"
#include "ltl/trace_io.hpp"
#include "support.hpp"

using namespace ltl;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion1Run {
  int oracle_size = 0;
  LearnResult learned;
};

std::vector<Criterion1Run> g_c1_runs;

struct DtRun {
  std::size_t pattern = 0;
  std::uint64_t seed = 0;
  std::size_t inner_nodes = 0;
  std::size_t psi_size = 0;
  std::optional<int> minimal_size;
};

std::vector<DtRun> g_dt_runs;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(double v, int digits = 2) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

Outcome minimality_oracle_equivalence() {
  std::mt19937_64 rng(1);
  const PropositionAlphabet alphabets[] = {PropositionAlphabet({"p"}), PropositionAlphabet({"p", "q"})};
  int settled = 0, agree = 0, consistent = 0, discarded = 0;
  for (int attempt = 0; settled < 60 && attempt < 1000; ++attempt) {
    const PropositionAlphabet& a = alphabets[attempt % 2];
    const Sample s = testing::random_sample(rng, a, 8, 6);
    const auto oracle = oracle_minimal(s, {4, OperatorSet::standard(), a});
    if (!oracle) {
      ++discarded;
      continue;
    }
    ++settled;
    LearnResult r = learn_minimal(s, {});
    agree += r.size == oracle->size;
    consistent += is_consistent(r.formulas.at(0), s);
    g_c1_runs.push_back({oracle->size, std::move(r)});
  }
  Outcome o;
  o.pass = settled >= 50 && agree == settled && consistent == settled;
  o.detail = std::to_string(agree) + "/" + std::to_string(settled) + " sizes equal the oracle, " +
             std::to_string(consistent) + "/" + std::to_string(settled) + " consistent (" +
             std::to_string(discarded) + " samples beyond oracle budget n<=4 discarded)";
  return o;
}

Outcome unsat_staircase() {
  int ok = 0;
  for (const auto& run : g_c1_runs) {
    const auto& stats = run.learned.stats;
    bool good = static_cast<int>(stats.size()) == run.oracle_size;
    for (std::size_t k = 0; good && k < stats.size(); ++k) {
      const bool last = static_cast<int>(k) + 1 == run.oracle_size;
      good = stats[k].size == static_cast<int>(k) + 1 &&
             stats[k].verdict == (last ? SolverVerdict::Status::Sat : SolverVerdict::Status::Unsat);
    }
    ok += good;
  }
  Outcome o;
  o.pass = !g_c1_runs.empty() && ok == static_cast<int>(g_c1_runs.size());
  o.detail = std::to_string(ok) + "/" + std::to_string(g_c1_runs.size()) +
             " runs are UNSAT below the minimal size and SAT at it";
  return o;
}

Outcome pattern_recovery() {
  const auto catalog = pattern_catalog();
  int ok = 0, total = 0;
  double worst = 0.0;
  std::string failures;
  for (std::size_t p = 0; p < catalog.size(); ++p) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      ++total;
      BenchmarkSpec spec;
      spec.pattern = catalog[p].formula;
      spec.sample_size = 50;
      spec.word_length = 10;
      spec.noise_propositions = 1;
      spec.seed = seed;
      const Sample s = generate_sample(spec);
      LearnerConfig config;
      config.total_timeout = std::chrono::minutes(10);
      const auto start = Clock::now();
      try {
        const LearnResult r = learn_minimal(s, config);
        const double t = seconds_since(start);
        worst = std::max(worst, t);
        const bool good = is_consistent(r.formulas.at(0), s) &&
                          static_cast<std::size_t>(r.size) <= formula_size(catalog[p].formula) && t <= 600.0;
        ok += good;
        if (!good) failures += " pattern" + std::to_string(p + 1) + "/seed" + std::to_string(seed);
      } catch (const Timeout&) {
        failures += " pattern" + std::to_string(p + 1) + "/seed" + std::to_string(seed) + "(timeout)";
      }
    }
  }
  Outcome o;
  o.pass = ok == total;
  o.detail = std::to_string(ok) + "/" + std::to_string(total) +
             " consistent with size <= pattern size, slowest " + fmt(worst) + " s" +
             (failures.empty() ? "" : ", failed:" + failures);
  return o;
}

Outcome dt_consistency() {
  const auto catalog = pattern_catalog();
  int ok = 0, total = 0, timeouts = 0;
  double worst = 0.0;
  for (std::size_t p = 0; p < catalog.size(); ++p) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      ++total;
      BenchmarkSpec spec;
      spec.pattern = catalog[p].formula;
      spec.sample_size = 200;
      spec.seed = seed;
      const Sample s = generate_sample(spec);
      DtConfig config;
      config.exact.total_timeout = std::chrono::minutes(10);
      config.sampling.strategy = Strategy::Alpha;
      config.sampling.subset_size = 3;
      config.sampling.seed = seed;
      const auto start = Clock::now();
      try {
        const DtResult r = learn_dt(s, config);
        worst = std::max(worst, seconds_since(start));
        ok += is_consistent(r.formula, s);
        DtRun run{p, seed, r.tree.inner_count(), formula_size(r.formula), std::nullopt};
        LearnerConfig exact;
        exact.total_timeout = std::chrono::seconds(120);
        try {
          run.minimal_size = learn_minimal(s, exact).size;
        } catch (const Timeout&) {
        }
        g_dt_runs.push_back(run);
      } catch (const Timeout&) {
        ++timeouts;
      }
    }
  }
  Outcome o;
  o.pass = ok == total && timeouts == 0;
  o.detail = std::to_string(ok) + "/" + std::to_string(total) + " runs consistent, " + std::to_string(timeouts) +
             " timeouts, slowest " + fmt(worst) + " s";
  return o;
}

Outcome dt_compactness() {
  double inner = 0.0, ratio = 0.0;
  int with_min = 0;
  for (const auto& r : g_dt_runs) {
    inner += static_cast<double>(r.inner_nodes);
    if (r.minimal_size) {
      ratio += static_cast<double>(r.psi_size) / *r.minimal_size;
      ++with_min;
    }
  }
  const double mean_inner = g_dt_runs.empty() ? 0.0 : inner / static_cast<double>(g_dt_runs.size());
  const double mean_ratio = with_min ? ratio / with_min : 0.0;
  Outcome o;
  o.pass = !g_dt_runs.empty() && mean_inner <= 6.0 && mean_ratio <= 2.0;
  o.detail = "mean inner nodes " + fmt(mean_inner) + " (bound 6), mean size(psi_t)/minimal size " + fmt(mean_ratio) +
             " over " + std::to_string(with_min) + " runs (bound 2.0)";
  return o;
}

Outcome observation_property() {
  std::mt19937_64 rng(2);
  const PropositionAlphabet a({"p", "q"});
  int agree = 0;
  const int total = 1000;
  for (int i = 0; i < total; ++i) {
    const SyntaxDag f = testing::random_formula(rng, a, 5);
    const LassoWord w = testing::random_word(rng, 2, 8);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, 20)(rng);
    const std::size_t at = normalize_position(k, w.prefix_length(), w.period_length());
    agree += evaluate(f, w, a, at) == testing::unrolled_holds(f, w, a, k);
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) +
                              " normalized evaluations equal the unrolled evaluation"};
}

std::vector<std::string> cli_formulas(const std::string& path, const std::string& count) {
  std::ostringstream out, err;
  const int code = cli::run({"learn", "--input", path, "--count", count}, out, err);
  if (code != 0) throw Error("learn --count " + count + " exited with " + std::to_string(code) + ": " + err.str());
  std::vector<std::string> formulas;
  std::istringstream in(out.str());
  for (std::string l; std::getline(in, l);)
    if (l.starts_with("formula := ")) formulas.push_back(l.substr(11));
  return formulas;
}

Outcome distinct_enumeration() {
  const Sample s = testing::xp_fp_sample();
  const auto path = std::filesystem::temp_directory_path() / "ltl_acceptance_xp_fp.trace";
  {
    std::ofstream f(path);
    write_sample(s, f);
  }
  auto check = [&](const std::vector<std::string>& fs, std::size_t expected, bool& good) {
    std::set<std::string> canonical;
    for (const auto& text : fs) {
      const SyntaxDag f = parse(text);
      good = good && f.size() == 2 && is_consistent(f, s);
      canonical.insert(render(canonicalize(f)));
    }
    good = good && fs.size() == expected && canonical.size() == expected;
    return canonical;
  };
  bool good = true;
  const auto two = check(cli_formulas(path.string(), "2"), 2, good);
  const auto five = check(cli_formulas(path.string(), "5"), 2, good);
  std::set<std::string> oracle;
  const auto reference = oracle_minimal(s, {2, OperatorSet::standard(), s.alphabet});
  for (const auto& f : reference->formulas) oracle.insert(render(f));
  good = good && five == oracle && two == oracle;
  std::string listed;
  for (const auto& f : five) listed += " " + f;
  return {good, "--count 2 and --count 5 both give" + listed + "; oracle set at size 2 has " +
                    std::to_string(oracle.size()) + " formulas"};
}

Outcome encoding_footprint() {
  std::mt19937_64 rng(3);
  const PropositionAlphabet alphabets[] = {PropositionAlphabet({"p"}), PropositionAlphabet({"p", "q"}),
                                           PropositionAlphabet({"p", "q", "r"})};
  int ok = 0;
  const int total = 20;
  for (int i = 0; i < total; ++i) {
    const int n = std::uniform_int_distribution<int>(1, 5)(rng);
    const PropositionAlphabet& a = alphabets[i % 3];
    const Sample s = testing::random_sample(rng, a, 10, 10);
    std::vector<std::size_t> lengths;
    for (const auto& [w, pos] : s.labeled_words()) lengths.push_back(w->length());
    const Encoding enc = encode_sample(n, s, OperatorSet::standard());
    ok += enc.pool.primary_count() == VariablePool::closed_form_count(n, a.size() + 8, lengths);
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " primary counts equal the closed form"};
}

int random_tree(std::mt19937_64& rng, DecisionTree& t, std::size_t features, int depth) {
  std::bernoulli_distribution coin(0.5);
  if (depth == 0 || coin(rng)) return t.add_leaf(coin(rng));
  const std::size_t f = std::uniform_int_distribution<std::size_t>(0, features - 1)(rng);
  const int on_true = random_tree(rng, t, features, depth - 1);
  const int on_false = random_tree(rng, t, features, depth - 1);
  return t.add_inner(f, on_true, on_false);
}

Outcome tree_extraction() {
  std::mt19937_64 rng(4);
  const PropositionAlphabet a({"p", "q"});
  int agree = 0;
  const int total = 200;
  for (int i = 0; i < total; ++i) {
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    std::vector<SyntaxDag> prims;
    for (std::size_t j = 0; j < k; ++j) prims.push_back(testing::random_formula(rng, a, 5));
    DecisionTree t;
    random_tree(rng, t, k, 4);
    const LassoWord w = testing::random_word(rng, 2, 8);
    std::vector<char> features;
    for (const auto& p : prims) features.push_back(evaluate(p, w, a));
    agree += evaluate(tree_to_formula(t, prims, OperatorSet::standard(), "p"), w, a) == t.classify(features);
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " extracted formulas match the tree"};
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    bool gated;
    std::function<Outcome()> run;
  };
  const Entry entries[] = {
      {1, "minimality oracle equivalence", true, minimality_oracle_equivalence},
      {2, "UNSAT staircase", true, unsat_staircase},
      {3, "pattern recovery (50 words)", true, pattern_recovery},
      {4, "DT consistency (200 words, alpha, k=3)", true, dt_consistency},
      {5, "DT compactness", false, dt_compactness},
      {6, "normalized vs unrolled evaluation", true, observation_property},
      {7, "distinct enumeration", true, distinct_enumeration},
      {8, "encoding footprint", true, encoding_footprint},
      {9, "tree extraction semantics", true, tree_extraction},
  };
  bool all = true;
  for (const auto& e : entries) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    const char* verdict = o.pass ? "PASS" : (e.gated ? "FAIL" : "DEVIATION");
    std::cout << "criterion " << e.id << " " << verdict << (e.gated ? "" : " (soft, not gated)") << ": " << e.name
              << " - " << o.detail << " [" << fmt(seconds_since(start), 1) << " s]" << std::endl;
    if (e.gated && !o.pass) all = false;
  }
  return all ? 0 : 1;
}
