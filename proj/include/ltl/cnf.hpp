#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ltl {

/// DIMACS-style literal: +v / -v for variable v >= 1.
using Literal = int;
using Clause = std::vector<Literal>;

/// Clause list over variables 1..num_vars.
struct CnfInstance {
  int num_vars = 0;
  std::vector<Clause> clauses;
  /// Optional readable name of a variable (empty string when unnamed).
  std::function<std::string(int)> names;

  int new_var() { return ++num_vars; }
  void add(Clause clause) { clauses.push_back(std::move(clause)); }
  /// Throws Error on zero literals or literals beyond num_vars.
  void validate() const;
};

/// `model[v]` is the value of variable v (index 0 unused).
bool satisfies(const CnfInstance& cnf, const std::vector<bool>& model);

/// Excludes every assignment that agrees with all of `literals`
/// (adds the clause of their negations).
CnfInstance add_blocking_clause(CnfInstance instance, std::span<const Literal> literals);

void write_dimacs(std::ostream& out, const CnfInstance& cnf);
CnfInstance read_dimacs(std::istream& in);

}  // namespace ltl
