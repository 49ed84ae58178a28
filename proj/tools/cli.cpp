#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ltl/benchgen.hpp"
#include "ltl/dt_learner.hpp"
#include "ltl/error.hpp"
#include "ltl/evaluate.hpp"
#include "ltl/exact_learner.hpp"
#include "ltl/trace_io.hpp"

namespace ltl::cli {

namespace {

struct Options {
  std::string input;
  int max_size = 30;
  double timeout_seconds = 0.0;
  int count = 1;
  std::string ops;
  std::string solver = "embedded";
  std::string stats = "text";
  std::string encoding = "compact";
  std::string mode = "exact";
  std::vector<std::string> constraints;

  std::string strategy = "alpha";
  int subset_size = 3;
  double boost = 2.0;
  int restart = 32;
  std::string coverage = "word";
  std::uint64_t seed = 1;

  std::string formula;
  int cnf_size = 1;
  std::string output;

  std::string pattern = "1";
  std::size_t size = 50;
  std::size_t length = 10;
  std::size_t noise = 1;
  bool suite = false;
  std::vector<std::size_t> sizes = kDeskScaleSizes;
  std::vector<std::uint64_t> seeds{1};
  std::string out_dir = ".";
};

SampleFile load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_sample_file(in);
}

LearnerConfig learner_config(const Options& o, const SampleFile& file) {
  LearnerConfig c;
  c.max_size = o.max_size;
  c.count = o.count;
  if (o.timeout_seconds > 0) c.total_timeout = c.solver_timeout = Duration(o.timeout_seconds);
  if (!o.ops.empty())
    c.ops = OperatorSet::parse(o.ops);
  else if (file.ops)
    c.ops = *file.ops;
  for (const auto& text : o.constraints) c.constraints.push_back(StructuralConstraint::parse(text));
  c.style = o.encoding == "tabular" ? EncodingStyle::Tabular : EncodingStyle::Compact;
  const std::string solver = o.solver;
  make_backend(solver);  // validates the flag before any work starts
  c.backend = [solver] { return make_backend(solver); };
  c.validate();
  return c;
}

std::string fixed(double v) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(3) << v;
  return ss.str();
}

void print_size_stats(std::ostream& out, const std::vector<SizeStats>& stats, const std::string& format) {
  for (const auto& s : stats) {
    if (format == "json-lines") {
      nlohmann::json j{{"n", s.size},
                       {"variables", s.variables},
                       {"primary_variables", s.primary_variables},
                       {"clauses", s.clauses},
                       {"verdict", std::string(to_string(s.verdict))},
                       {"seconds", s.seconds}};
      out << j.dump() << '\n';
    } else {
      out << "stat n=" << s.size << " variables=" << s.variables << " primary=" << s.primary_variables
          << " clauses=" << s.clauses << " verdict=" << to_string(s.verdict) << " seconds=" << fixed(s.seconds)
          << '\n';
    }
  }
}

void print_round_stats(std::ostream& out, const std::vector<RoundStats>& rounds, const std::string& format) {
  for (const auto& r : rounds) {
    if (format == "json-lines") {
      nlohmann::json j{{"round", r.round},
                       {"positives", r.positives},
                       {"negatives", r.negatives},
                       {"primitive_size", r.primitive_size},
                       {"new_primitive", r.new_primitive},
                       {"unseparated_pairs", r.unseparated_pairs},
                       {"seconds", r.seconds}};
      out << j.dump() << '\n';
    } else {
      out << "round " << r.round << " positives=" << r.positives << " negatives=" << r.negatives
          << " primitive_size=" << r.primitive_size << " new=" << (r.new_primitive ? 1 : 0)
          << " unseparated=" << r.unseparated_pairs << " seconds=" << fixed(r.seconds) << '\n';
    }
  }
}

int cmd_learn(const Options& o, std::ostream& out) {
  const SampleFile file = load(o.input);
  const LearnerConfig config = learner_config(o, file);
  const LearnResult result = config.count > 1 ? learn_distinct(file.sample, config) : learn_minimal(file.sample, config);
  write_formula_report(out, result.formulas);
  print_size_stats(out, result.stats, o.stats);
  return kOk;
}

int cmd_learn_dt(const Options& o, std::ostream& out) {
  const SampleFile file = load(o.input);
  DtConfig config;
  config.exact = learner_config(o, file);
  config.sampling.strategy = o.strategy == "beta" ? Strategy::Beta : Strategy::Alpha;
  config.sampling.subset_size = o.subset_size;
  config.sampling.boost = o.boost;
  config.sampling.restart = o.restart;
  config.sampling.seed = o.seed;
  config.sampling.coverage = o.coverage == "word" ? CoverageRule::Word : CoverageRule::Pair;
  config.sampling.validate();

  const DtResult result = learn_dt(file.sample, config);
  for (std::size_t k = 0; k < result.primitives.primitives.size(); ++k)
    out << "primitive[" << k << "] := " << render(result.primitives.primitives[k]) << '\n';
  const SyntaxDag formulas[] = {result.formula};
  write_formula_report(out, formulas);
  out << "tree:\n";
  write_tree(out, result.tree, result.primitives.primitives);
  out << "inner-nodes := " << result.tree.inner_count() << '\n';
  out << "primitives := " << result.primitives.primitives.size() << '\n';
  print_round_stats(out, result.primitives.rounds, o.stats);
  return kOk;
}

SyntaxDag pattern_from(const std::string& text) {
  const auto catalog = pattern_catalog();
  if (!text.empty() && std::all_of(text.begin(), text.end(), ::isdigit)) {
    const auto index = std::stoul(text);
    if (index < 1 || index > catalog.size())
      throw Error("pattern index must be between 1 and " + std::to_string(catalog.size()));
    return catalog[index - 1].formula;
  }
  return parse(text);
}

int cmd_gen(const Options& o, std::ostream& out) {
  if (!o.suite) {
    BenchmarkSpec spec{pattern_from(o.pattern), o.size, o.length, o.noise, o.seed, std::nullopt};
    const Sample sample = generate_sample(spec);
    if (o.output.empty() || o.output == "-") {
      write_sample(sample, out);
    } else {
      std::ofstream f(o.output);
      if (!f) throw Error("cannot write '" + o.output + "'");
      f << "# pattern: " << render(spec.pattern) << " size: " << o.size << " seed: " << o.seed << '\n';
      write_sample(sample, f);
    }
    return kOk;
  }
  namespace fs = std::filesystem;
  fs::create_directories(o.out_dir);
  std::ofstream manifest(fs::path(o.out_dir) / "manifest.txt");
  if (!manifest) throw Error("cannot write manifest in '" + o.out_dir + "'");
  for (const auto& e : benchmark_suite(o.sizes, o.seeds, o.length, o.noise)) {
    const std::string name = "pattern" + std::to_string(e.pattern_index + 1) + "_size" +
                             std::to_string(e.spec.sample_size) + "_seed" + std::to_string(e.spec.seed) + ".trace";
    const fs::path path = fs::path(o.out_dir) / name;
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path.string() + "'");
    f << "# pattern: " << render(e.spec.pattern) << " size: " << e.spec.sample_size << " seed: " << e.spec.seed
      << '\n';
    write_sample(e.sample, f);
    manifest << render(e.spec.pattern) << '\t' << e.spec.sample_size << '\t' << e.spec.seed << '\t' << path.string()
             << (e.long_running ? "\tlong-running" : "") << '\n';
    out << path.string() << '\n';
  }
  return kOk;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const SampleFile file = load(o.input);
  const SyntaxDag formula = parse(o.formula, file.sample.alphabet);
  const BoundFormula bound(formula, file.sample.alphabet);
  for (const auto& [word, positive] : file.sample.labeled_words()) out << (bound.evaluate(*word) ? "true" : "false") << '\n';
  return kOk;
}

int cmd_export_cnf(const Options& o, std::ostream& out) {
  const SampleFile file = load(o.input);
  LearnerConfig config = learner_config(o, file);
  file.sample.validate();
  Encoding enc = encode_sample(o.cnf_size, file.sample, config.ops, config.style);
  apply_structural_constraints(enc, config.constraints);
  const CnfInstance cnf = enc.cnf();
  if (o.output.empty() || o.output == "-") {
    write_dimacs(out, cnf);
  } else {
    std::ofstream f(o.output);
    if (!f) throw Error("cannot write '" + o.output + "'");
    write_dimacs(f, cnf);
  }
  return kOk;
}

void add_learner_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--input", o.input, "Sample file")->required();
  cmd->add_option("--max-size", o.max_size, "Largest formula size to try")->check(CLI::PositiveNumber);
  cmd->add_option("--timeout-seconds", o.timeout_seconds, "Overall time limit (0 = none)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--count", o.count, "Number of distinct minimal formulas")->check(CLI::PositiveNumber);
  cmd->add_option("--ops", o.ops, "Comma-separated operators, e.g. '!,|,&,->,X,U,F,G'");
  cmd->add_option("--solver", o.solver, "embedded or dimacs:<path>");
  cmd->add_option("--stats", o.stats, "Statistics format")->check(CLI::IsMember({"text", "json-lines"}));
  cmd->add_option("--encoding", o.encoding, "Clause layout")->check(CLI::IsMember({"compact", "tabular"}));
  cmd->add_option("--constraint", o.constraints, "root=<labels>, unused=<labels> or node<k>=<labels>");
}

void add_dt_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--strategy", o.strategy, "Primitive strategy")->check(CLI::IsMember({"alpha", "beta"}));
  cmd->add_option("--subset-size", o.subset_size, "Subset size k")->check(CLI::PositiveNumber);
  cmd->add_option("--boost", o.boost, "Weight boost for uncovered words (alpha)");
  cmd->add_option("--restart", o.restart, "Rounds without progress before weights reset (alpha)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--coverage", o.coverage, "Words boosted by alpha")->check(CLI::IsMember({"pair", "word"}));
  cmd->add_option("--seed", o.seed, "Random seed");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Learn LTL formulas from positive and negative lasso traces", "ltlearn"};
  app.require_subcommand(1, 1);

  auto* learn = app.add_subcommand("learn", "Minimal consistent formula via SAT");
  add_learner_flags(learn, o);
  add_dt_flags(learn, o);
  learn->add_option("--mode", o.mode, "exact or dt")->check(CLI::IsMember({"exact", "dt"}));

  auto* learn_dt_cmd = app.add_subcommand("learn-dt", "Decision tree over SAT-learned primitives");
  add_learner_flags(learn_dt_cmd, o);
  add_dt_flags(learn_dt_cmd, o);

  auto* gen = app.add_subcommand("gen", "Generate benchmark samples from the pattern catalog");
  gen->add_option("--pattern", o.pattern, "Catalog index 1-9 or formula text");
  gen->add_option("--size", o.size, "Number of words")->check(CLI::PositiveNumber);
  gen->add_option("--length", o.length, "|u|+|v| of every word")->check(CLI::PositiveNumber);
  gen->add_option("--noise", o.noise, "Number of noise propositions");
  gen->add_option("--seed", o.seed, "Random seed");
  gen->add_option("--output", o.output, "Output file (default: standard output)");
  gen->add_flag("--suite", o.suite, "Generate the whole catalog into --out-dir with a manifest");
  gen->add_option("--sizes", o.sizes, "Suite sample sizes")->delimiter(',');
  gen->add_option("--seeds", o.seeds, "Suite seeds")->delimiter(',');
  gen->add_option("--out-dir", o.out_dir, "Suite output directory");

  auto* eval = app.add_subcommand("eval", "Evaluate a formula on every word of a sample");
  eval->add_option("--formula", o.formula, "Formula text")->required();
  eval->add_option("--input", o.input, "Sample file")->required();

  auto* export_cnf = app.add_subcommand("export-cnf", "Write the size-n encoding as DIMACS");
  export_cnf->add_option("--input", o.input, "Sample file")->required();
  export_cnf->add_option("--size", o.cnf_size, "Formula size n")->check(CLI::PositiveNumber);
  export_cnf->add_option("--ops", o.ops, "Comma-separated operators");
  export_cnf->add_option("--encoding", o.encoding, "Clause layout")->check(CLI::IsMember({"compact", "tabular"}));
  export_cnf->add_option("--constraint", o.constraints, "Structural constraints");
  export_cnf->add_option("--output", o.output, "Output file (default: standard output)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUserError;
  }

  try {
    if (learn->parsed()) return o.mode == "dt" ? cmd_learn_dt(o, out) : cmd_learn(o, out);
    if (learn_dt_cmd->parsed()) return cmd_learn_dt(o, out);
    if (gen->parsed()) return cmd_gen(o, out);
    if (eval->parsed()) return cmd_eval(o, out);
    if (export_cnf->parsed()) return cmd_export_cnf(o, out);
  } catch (const BudgetExhausted& e) {
    err << "budget exhausted: " << e.what() << '\n';
    return kBudget;
  } catch (const Timeout& e) {
    err << "timeout: " << e.what() << " (last completed size " << e.last_completed_size() << ")\n";
    return kBudget;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const SolverFailure& e) {
    err << "solver failure: " << e.what() << '\n';
    return kInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUserError;
  }
  return kUserError;
}

}  // namespace ltl::cli
