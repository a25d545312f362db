#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spl/errors.hpp"
#include "spl/translate.hpp"

namespace spl {

struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;  // non-zero signed indices in [1, num_vars]
  std::vector<std::string> var_names;     // optional; index i-1 names variable i
};

struct Assignment {
  std::vector<bool> values;  // index var-1
  bool value(int var) const { return values.at(static_cast<std::size_t>(var) - 1); }
};

struct CnfResult {
  CnfFormula cnf;
  std::map<PropAtom, int> atom_vars;  // original atoms -> variable index
};

// Tseitin clausification. Constants are folded away first; auxiliary
// variables are named "_t<k>", disjoint from the vocabulary's atom names.
// Any satisfying assignment restricted to the original atoms satisfies f.
CnfResult to_cnf(const PropPtr& f, const Vocabulary& vocab);

enum class SolveStatus { Sat, Unsat };

struct SolveResult {
  SolveStatus status = SolveStatus::Unsat;
  Assignment assignment;        // total over [1, num_vars] when Sat
  std::uint64_t decisions = 0;  // branching decisions taken
};

// Complete DPLL with unit propagation, pure-literal elimination and
// first-unassigned branching (true tried first). Deterministic. Throws
// BudgetError when the decision budget is exhausted; never returns a wrong
// verdict. Returned assignments are re-checked against every clause.
SolveResult solve(const CnfFormula& cnf, std::uint64_t decision_budget = 50000000);

// DIMACS CNF with "c var <index> <name>" comments carrying the name table.
std::string emit_dimacs(const CnfFormula& cnf);
CnfFormula parse_dimacs(const std::string& text);

}  // namespace spl
