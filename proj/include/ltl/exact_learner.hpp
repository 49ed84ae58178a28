#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ltl/encoding.hpp"
#include "ltl/sat_backend.hpp"

namespace ltl {

/// Restriction on the x/l/r variables of the encoding.
struct StructuralConstraint {
  enum class Kind {
    RootLabelIn,  // the root carries one of `labels`
    NodeLabelIn,  // node `node` carries one of `labels` (formulas smaller than `node` are excluded)
    LabelUnused,  // no node carries any of `labels`
  };
  Kind kind = Kind::LabelUnused;
  int node = 0;
  /// Operator symbols (`G`, `->`, ...) or proposition names.
  std::vector<std::string> labels;

  /// Parses `root=G,->`, `unused=!` or `node3=U`.
  static StructuralConstraint parse(std::string_view text);
};

/// Conjoins the clauses of `constraints` to the encoding. Throws Error for
/// node identifiers below 1 and labels the encoding does not know.
void apply_structural_constraints(Encoding& encoding, const std::vector<StructuralConstraint>& constraints);

struct LearnerConfig {
  int max_size = 30;
  Duration solver_timeout = kNoTimeout;
  Duration total_timeout = kNoTimeout;
  OperatorSet ops = OperatorSet::standard();
  /// Number of distinct minimal formulas requested.
  int count = 1;
  std::vector<StructuralConstraint> constraints;
  EncodingStyle style = EncodingStyle::Compact;
  /// Solver factory; the embedded CDCL solver when empty.
  std::function<std::unique_ptr<SatBackend>()> backend;

  void validate() const;
};

/// One solver call of the size search.
struct SizeStats {
  int size = 0;
  int variables = 0;
  int primary_variables = 0;
  std::size_t clauses = 0;
  SolverVerdict::Status verdict = SolverVerdict::Status::Unsat;
  double seconds = 0.0;
};

struct LearnResult {
  /// Distinct formulas of the minimal size, in solver order.
  std::vector<SyntaxDag> formulas;
  int size = 0;
  std::vector<SizeStats> stats;
};

/// Smallest consistent formula, probing sizes 1, 2, ... up to max_size.
/// Throws ContradictorySample, BudgetExhausted or Timeout.
LearnResult learn_minimal(const Sample& sample, const LearnerConfig& config);

/// As learn_minimal, then re-solves with blocking clauses until `config.count`
/// canonically distinct formulas of the minimal size are found or none remain.
LearnResult learn_distinct(const Sample& sample, const LearnerConfig& config);

}  // namespace ltl
