#include "ltl/exact_learner.hpp"

#include <algorithm>
#include <set>

#include "ltl/error.hpp"
#include "ltl/evaluate.hpp"

namespace ltl {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<std::string> split_labels(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == text.npos) end = text.size();
    if (end > start) out.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::vector<std::size_t> resolve_labels(const VariablePool& pool, const std::vector<std::string>& labels) {
  std::vector<std::size_t> out;
  for (const auto& text : labels) {
    std::optional<std::size_t> k;
    if (auto op = op_from_symbol(text)) {
      k = pool.label_index({*op, 0});
      if (!k) continue;
    } else if (auto p = pool.alphabet().index_of(text)) {
      k = pool.label_index({Op::Prop, *p});
    } else {
      throw Error("constraint label '" + text + "' is neither an operator nor a proposition");
    }
    out.push_back(*k);
  }
  return out;
}

std::unique_ptr<SatBackend> make(const LearnerConfig& config) {
  return config.backend ? config.backend() : std::make_unique<EmbeddedBackend>();
}

Duration remaining(Clock::time_point start, const LearnerConfig& config) {
  if (config.total_timeout >= Duration(1e9)) return config.solver_timeout;
  const Duration left = config.total_timeout - (Clock::now() - start);
  return std::max(Duration(0), std::min(left, config.solver_timeout));
}

struct SearchState {
  LearnResult result;
  std::optional<Encoding> encoding;
  std::vector<bool> model;
};

SearchState search(const Sample& sample, const LearnerConfig& config, Clock::time_point start,
                   SatBackend& backend) {
  config.validate();
  sample.validate();
  for (const auto& c : config.constraints)
    if (c.kind == StructuralConstraint::Kind::NodeLabelIn && c.node > config.max_size)
      throw Error("constraint references node " + std::to_string(c.node) + " beyond the maximum size " +
                  std::to_string(config.max_size));

  SearchState state;
  for (int n = 1; n <= config.max_size; ++n) {
    if (remaining(start, config) <= Duration(0))
      throw Timeout("time budget spent before size " + std::to_string(n), n - 1);
    Encoding enc = encode_sample(n, sample, config.ops, config.style);
    apply_structural_constraints(enc, config.constraints);
    const CnfInstance cnf = enc.cnf();
    const SolverVerdict verdict = backend.solve(cnf, remaining(start, config));
    state.result.stats.push_back(SizeStats{n, cnf.num_vars, enc.pool.primary_count(), cnf.clauses.size(),
                                           verdict.status, verdict.elapsed.count()});
    if (verdict.status == SolverVerdict::Status::Timeout)
      throw Timeout("solver timed out at size " + std::to_string(n), n - 1);
    if (verdict.sat()) {
      state.result.size = n;
      state.model = verdict.model;
      state.encoding.emplace(std::move(enc));
      return state;
    }
  }
  throw BudgetExhausted("no consistent formula of size at most " + std::to_string(config.max_size));
}

SyntaxDag checked_decode(const std::vector<bool>& model, const VariablePool& pool, const Sample& sample) {
  SyntaxDag formula = decode_model(model, pool);
  if (!is_consistent(formula, sample))
    throw InvariantViolation("decoded formula " + render(formula) + " is not consistent with the sample");
  return formula;
}

}  // namespace

StructuralConstraint StructuralConstraint::parse(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == text.npos) throw Error("constraint '" + std::string(text) + "' must have the form key=labels");
  const std::string_view key = text.substr(0, eq);
  StructuralConstraint c;
  c.labels = split_labels(text.substr(eq + 1));
  if (c.labels.empty()) throw Error("constraint '" + std::string(text) + "' lists no labels");
  if (key == "root") {
    c.kind = Kind::RootLabelIn;
  } else if (key == "unused") {
    c.kind = Kind::LabelUnused;
  } else if (key.starts_with("node")) {
    c.kind = Kind::NodeLabelIn;
    try {
      c.node = std::stoi(std::string(key.substr(4)));
    } catch (const std::exception&) {
      throw Error("constraint '" + std::string(text) + "': bad node identifier");
    }
  } else {
    throw Error("unknown constraint kind '" + std::string(key) + "'");
  }
  return c;
}

void apply_structural_constraints(Encoding& encoding, const std::vector<StructuralConstraint>& constraints) {
  const VariablePool& pool = encoding.pool;
  const int n = pool.size_bound();
  auto& out = encoding.formula.constraints;
  for (const auto& c : constraints) {
    const auto labels = resolve_labels(pool, c.labels);
    switch (c.kind) {
      case StructuralConstraint::Kind::LabelUnused:
        for (int i = 1; i <= n; ++i)
          for (std::size_t k : labels) out.push_back({-pool.x(i, k)});
        break;
      case StructuralConstraint::Kind::RootLabelIn:
      case StructuralConstraint::Kind::NodeLabelIn: {
        const int node = c.kind == StructuralConstraint::Kind::RootLabelIn ? n : c.node;
        if (node < 1) throw Error("constraint references node " + std::to_string(node));
        if (node > n) {
          out.push_back({});
          break;
        }
        Clause clause;
        for (std::size_t k : labels) clause.push_back(pool.x(node, k));
        out.push_back(std::move(clause));
        break;
      }
    }
  }
}

void LearnerConfig::validate() const {
  if (max_size < 1) throw Error("max_size must be at least 1");
  if (count < 1) throw Error("count must be at least 1");
  if (ops.empty()) throw Error("operator set must be nonempty");
}

LearnResult learn_minimal(const Sample& sample, const LearnerConfig& config) {
  const auto start = Clock::now();
  auto backend = make(config);
  SearchState state = search(sample, config, start, *backend);
  state.result.formulas.push_back(checked_decode(state.model, state.encoding->pool, sample));
  return std::move(state.result);
}

LearnResult learn_distinct(const Sample& sample, const LearnerConfig& config) {
  const auto start = Clock::now();
  auto backend = make(config);
  SearchState state = search(sample, config, start, *backend);
  const VariablePool& pool = state.encoding->pool;
  CnfInstance cnf = state.encoding->cnf();
  std::set<std::string> seen;
  std::vector<bool> model = state.model;

  while (true) {
    SyntaxDag formula = checked_decode(model, pool, sample);
    if (seen.insert(render(canonicalize(formula))).second) state.result.formulas.push_back(std::move(formula));
    if (static_cast<int>(state.result.formulas.size()) >= config.count) break;
    cnf = add_blocking_clause(std::move(cnf), structure_literals(model, pool));
    const SolverVerdict verdict = backend->solve(cnf, remaining(start, config));
    if (verdict.status == SolverVerdict::Status::Timeout) {
      break;
    }
    if (!verdict.sat()) break;
    model = verdict.model;
  }
  return std::move(state.result);
}

}  // namespace ltl
