#include "ltl/cnf.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "ltl/error.hpp"

namespace ltl {

void CnfInstance::validate() const {
  for (const auto& c : clauses)
    for (Literal l : c)
      if (l == 0 || std::abs(l) > num_vars)
        throw Error("literal " + std::to_string(l) + " out of range for " + std::to_string(num_vars) + " variables");
}

bool satisfies(const CnfInstance& cnf, const std::vector<bool>& model) {
  if (static_cast<int>(model.size()) < cnf.num_vars + 1) return false;
  for (const auto& c : cnf.clauses) {
    bool sat = false;
    for (Literal l : c) {
      if (model[static_cast<std::size_t>(std::abs(l))] == (l > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

CnfInstance add_blocking_clause(CnfInstance instance, std::span<const Literal> literals) {
  if (literals.empty()) throw Error("blocking clause needs at least one literal");
  Clause block;
  block.reserve(literals.size());
  for (Literal l : literals) block.push_back(-l);
  instance.add(std::move(block));
  return instance;
}

void write_dimacs(std::ostream& out, const CnfInstance& cnf) {
  if (cnf.names) {
    for (int v = 1; v <= cnf.num_vars; ++v) {
      auto name = cnf.names(v);
      if (!name.empty()) out << "c " << v << ' ' << name << '\n';
    }
  }
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& c : cnf.clauses) {
    for (Literal l : c) out << l << ' ';
    out << "0\n";
  }
  if (!out) throw Error("failed to write DIMACS");
}

CnfInstance read_dimacs(std::istream& in) {
  CnfInstance cnf;
  std::string line;
  bool header = false;
  Clause current;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
    std::istringstream ss(line);
    if (line[0] == 'p') {
      std::string p, fmt;
      std::size_t count = 0;
      ss >> p >> fmt >> cnf.num_vars >> count;
      if (fmt != "cnf") throw Error("DIMACS: expected 'p cnf' header");
      header = true;
      continue;
    }
    if (!header) throw Error("DIMACS: clause before header");
    Literal l;
    while (ss >> l) {
      if (l == 0) {
        cnf.clauses.push_back(std::move(current));
        current.clear();
      } else {
        current.push_back(l);
      }
    }
  }
  if (!current.empty()) cnf.clauses.push_back(std::move(current));
  cnf.validate();
  return cnf;
}

}  // namespace ltl
