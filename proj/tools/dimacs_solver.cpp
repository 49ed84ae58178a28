// Standalone DIMACS front end of the embedded solver, speaking the usual
// competition output convention (exit 10 = SAT, 20 = UNSAT).
#include <fstream>
#include <iostream>

#include "ltl/cdcl_solver.hpp"
#include "ltl/cnf.hpp"
#include "ltl/error.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: ltl-sat <file.cnf>\n";
    return 1;
  }
  try {
    std::ifstream in(argv[1]);
    if (!in) throw ltl::Error(std::string("cannot open ") + argv[1]);
    const ltl::CnfInstance cnf = ltl::read_dimacs(in);
    ltl::CdclSolver solver;
    solver.reserve_vars(cnf.num_vars);
    bool ok = true;
    for (const auto& c : cnf.clauses) ok = ok && solver.add_clause(c);
    const auto result = ok ? solver.solve() : ltl::CdclSolver::Result::Unsat;
    const auto& st = solver.stats();
    std::cout << "c conflicts " << st.conflicts << " decisions " << st.decisions << " propagations "
              << st.propagations << " restarts " << st.restarts << '\n';
    if (result != ltl::CdclSolver::Result::Sat) {
      std::cout << "s UNSATISFIABLE\n";
      return 20;
    }
    if (!ltl::satisfies(cnf, solver.model())) throw ltl::Error("model check failed");
    std::cout << "s SATISFIABLE\nv";
    for (int v = 1; v <= cnf.num_vars; ++v)
      std::cout << ' ' << (solver.model()[static_cast<std::size_t>(v)] ? v : -v);
    std::cout << " 0\n";
    return 10;
  } catch (const std::exception& e) {
    std::cerr << "ltl-sat: " << e.what() << '\n';
    return 1;
  }
}
