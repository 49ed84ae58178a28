#include <doctest.h>

#include <set>

#include "ltl/benchgen.hpp"
#include "ltl/error.hpp"
#include "ltl/exact_learner.hpp"
#include "ltl/oracle.hpp"
#include "support.hpp"

using namespace ltl;
using ltl::testing::word;

namespace {

std::set<std::string> rendered(const std::vector<SyntaxDag>& fs) {
  std::set<std::string> out;
  for (const auto& f : fs) out.insert(render(f));
  return out;
}

}  // namespace

TEST_CASE("learn_minimal examples") {
  const LearnResult a = learn_minimal(testing::sample({"p"}, {word({}, {"1"})}, {word({}, {"0"})}), {});
  CHECK(a.size == 1);
  CHECK(render(a.formulas.at(0)) == "p");

  const LearnResult b = learn_minimal(testing::sample({"p", "q"}, {word({}, {"11"})}, {word({}, {"10"})}), {});
  CHECK(b.size == 1);
  CHECK(render(b.formulas.at(0)) == "q");

  const LearnResult c = learn_minimal(testing::xp_fp_sample(), {});
  CHECK(c.size == 2);
  CHECK((render(c.formulas.at(0)) == "(X p)" || render(c.formulas.at(0)) == "(F p)"));
  REQUIRE(c.stats.size() == 2);
  CHECK(c.stats[0].verdict == SolverVerdict::Status::Unsat);
  CHECK(c.stats[1].verdict == SolverVerdict::Status::Sat);
  CHECK(c.stats[1].primary_variables == VariablePool::closed_form_count(2, 9, {2, 1}));
}

TEST_CASE("errors") {
  const Sample contradictory = testing::sample({"p"}, {word({}, {"1"})}, {word({"1"}, {"1"})});
  CHECK_THROWS_AS(learn_minimal(contradictory, {}), ContradictorySample);
  LearnerConfig capped;
  capped.max_size = 1;
  CHECK_THROWS_AS(learn_minimal(testing::xp_fp_sample(), capped), BudgetExhausted);
  LearnerConfig bad;
  bad.max_size = 0;
  CHECK_THROWS_AS(learn_minimal(testing::xp_fp_sample(), bad), Error);
}

TEST_CASE("operator restriction") {
  LearnerConfig no_x;
  no_x.ops = OperatorSet::parse("!,|,&,F,G");
  const LearnResult r = learn_minimal(testing::xp_fp_sample(), no_x);
  CHECK(render(r.formulas.at(0)) == "(F p)");
  LearnerConfig only_x;
  only_x.ops = OperatorSet::parse("X");
  CHECK(render(learn_minimal(testing::xp_fp_sample(), only_x).formulas.at(0)) == "(X p)");
}

TEST_CASE("empty sides") {
  const LearnResult r = learn_minimal(testing::sample({"p"}, {word({}, {"1"})}, {}), {});
  CHECK(r.size == 1);
  const LearnResult none = learn_minimal(testing::sample({"p"}, {}, {}), {});
  CHECK(none.size == 1);
}

TEST_CASE("distinct formulas") {
  LearnerConfig two;
  two.count = 2;
  const LearnResult r = learn_distinct(testing::xp_fp_sample(), two);
  CHECK(r.size == 2);
  CHECK(rendered(r.formulas) == std::set<std::string>{"(X p)", "(F p)"});

  LearnerConfig five;
  five.count = 5;
  const LearnResult all = learn_distinct(testing::xp_fp_sample(), five);
  CHECK(all.formulas.size() == 2);

  LearnerConfig one;
  CHECK(render(learn_distinct(testing::xp_fp_sample(), one).formulas.at(0)) ==
        render(learn_minimal(testing::xp_fp_sample(), one).formulas.at(0)));
}

TEST_CASE("distinct enumeration matches the oracle on random samples") {
  std::mt19937_64 rng(21);
  const PropositionAlphabet a({"p", "q"});
  int compared = 0;
  for (int i = 0; i < 25; ++i) {
    const Sample s = testing::random_sample(rng, a, 6, 5);
    const auto oracle = oracle_minimal(s, {3, OperatorSet::standard(), a});
    if (!oracle) continue;
    LearnerConfig config;
    config.count = 1000;
    const LearnResult r = learn_distinct(s, config);
    CHECK(r.size == oracle->size);
    CHECK(rendered(r.formulas) == rendered(oracle->formulas));
    CHECK(r.formulas.size() == oracle->formulas.size());
    ++compared;
  }
  CHECK(compared > 10);
}

TEST_CASE("structural constraints") {
  CHECK(StructuralConstraint::parse("root=G,->").kind == StructuralConstraint::Kind::RootLabelIn);
  CHECK(StructuralConstraint::parse("root=G,->").labels == std::vector<std::string>{"G", "->"});
  CHECK(StructuralConstraint::parse("node3=U").node == 3);
  CHECK(StructuralConstraint::parse("unused=!").kind == StructuralConstraint::Kind::LabelUnused);
  CHECK_THROWS_AS(StructuralConstraint::parse("leaf=p"), Error);
  CHECK_THROWS_AS(StructuralConstraint::parse("root="), Error);

  BenchmarkSpec spec;
  spec.pattern = parse("G (! p0)");
  spec.sample_size = 20;
  spec.word_length = 6;
  const Sample s = generate_sample(spec);

  LearnerConfig root_g;
  root_g.constraints = {StructuralConstraint::parse("root=G")};
  const LearnResult g = learn_minimal(s, root_g);
  const SyntaxDag& f = g.formulas.at(0);
  CHECK(f.node(f.root()).op == Op::Globally);
  CHECK(is_consistent(f, s));

  LearnerConfig no_not;
  no_not.constraints = {StructuralConstraint::parse("unused=!")};
  const LearnResult nn = learn_minimal(s, no_not);
  for (const auto& node : nn.formulas.at(0).nodes()) CHECK(node.op != Op::Not);
  CHECK(is_consistent(nn.formulas.at(0), s));

  LearnerConfig clash;
  clash.max_size = 4;
  clash.constraints = {StructuralConstraint::parse("root=G"), StructuralConstraint::parse("unused=G")};
  CHECK_THROWS_AS(learn_minimal(s, clash), BudgetExhausted);

  LearnerConfig unknown;
  unknown.constraints = {StructuralConstraint::parse("root=W")};
  CHECK_THROWS_AS(learn_minimal(s, unknown), Error);
}

TEST_CASE("timeouts report the last completed size") {
  std::mt19937_64 rng(6);
  const PropositionAlphabet a({"p", "q", "r", "s"});
  Sample s{a, {}, {}};
  while (s.word_count() < 400) {
    const LassoWord w = testing::random_word(rng, 4, 12);
    auto& side = s.word_count() % 2 ? s.positives : s.negatives;
    const auto& other = s.word_count() % 2 ? s.negatives : s.positives;
    if (std::none_of(other.begin(), other.end(), [&](const LassoWord& o) { return same_omega_word(o, w); }))
      side.push_back(w);
  }
  LearnerConfig config;
  config.total_timeout = std::chrono::milliseconds(1);
  try {
    learn_minimal(s, config);
    FAIL("expected a timeout");
  } catch (const Timeout& e) {
    CHECK(e.last_completed_size() >= 0);
  }
}

TEST_CASE("external solver backend gives the same sizes") {
  const std::string solver = std::string("dimacs:") + LTL_SAT_TOOL;
  LearnerConfig config;
  config.backend = [solver] { return make_backend(solver); };
  std::mt19937_64 rng(41);
  const PropositionAlphabet a({"p", "q"});
  for (int i = 0; i < 5; ++i) {
    const Sample s = testing::random_sample(rng, a, 6, 5);
    const LearnResult ext = learn_minimal(s, config);
    const LearnResult emb = learn_minimal(s, {});
    CHECK(ext.size == emb.size);
    CHECK(is_consistent(ext.formulas.at(0), s));
  }
}

TEST_CASE("tabular layout yields the same minimal sizes") {
  std::mt19937_64 rng(77);
  const PropositionAlphabet a({"p", "q"});
  LearnerConfig tab;
  tab.style = EncodingStyle::Tabular;
  for (int i = 0; i < 15; ++i) {
    const Sample s = testing::random_sample(rng, a, 6, 5);
    CHECK(learn_minimal(s, tab).size == learn_minimal(s, {}).size);
  }
}
