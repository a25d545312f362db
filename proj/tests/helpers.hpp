#pragma once

#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "spl/ast.hpp"
#include "spl/semantics.hpp"

namespace spl::testgen {

inline ExprPtr random_expr(std::mt19937& rng, const std::vector<std::string>& stands,
                           int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 4);
  switch (pick(rng)) {
    case 0: return StandpointExpr::star();
    case 1: {
      std::uniform_int_distribution<std::size_t> s(0, stands.size() - 1);
      return StandpointExpr::named(stands[s(rng)]);
    }
    case 2:
      return StandpointExpr::union_of(random_expr(rng, stands, depth - 1),
                                      random_expr(rng, stands, depth - 1));
    case 3:
      return StandpointExpr::inter_of(random_expr(rng, stands, depth - 1),
                                      random_expr(rng, stands, depth - 1));
    default:
      return StandpointExpr::diff_of(random_expr(rng, stands, depth - 1),
                                     random_expr(rng, stands, depth - 1));
  }
}

// Random formula over the given symbols. core_only restricts to the
// desugared surface (no Or/Implies/Diamond).
inline FormulaPtr random_formula(std::mt19937& rng, const std::vector<std::string>& atoms,
                                 const std::vector<std::string>& stands, int depth,
                                 bool core_only = false) {
  std::uniform_int_distribution<int> leaf(0, 3);
  if (depth <= 0) {
    switch (leaf(rng)) {
      case 0: return Formula::tru();
      case 1: return Formula::fls();
      case 2: {
        std::uniform_int_distribution<std::size_t> a(0, atoms.size() - 1);
        return Formula::atom(atoms[a(rng)]);
      }
      default:
        return Formula::sharper(random_expr(rng, stands, 1), random_expr(rng, stands, 1));
    }
  }
  std::uniform_int_distribution<int> pick(0, core_only ? 3 : 6);
  switch (pick(rng)) {
    case 0: return Formula::neg(random_formula(rng, atoms, stands, depth - 1, core_only));
    case 1:
      return Formula::land(random_formula(rng, atoms, stands, depth - 1, core_only),
                           random_formula(rng, atoms, stands, depth - 1, core_only));
    case 2:
      return Formula::box(random_expr(rng, stands, 1),
                          random_formula(rng, atoms, stands, depth - 1, core_only));
    case 3: return random_formula(rng, atoms, stands, 0, core_only);
    case 4:
      return Formula::lor(random_formula(rng, atoms, stands, depth - 1, core_only),
                          random_formula(rng, atoms, stands, depth - 1, core_only));
    case 5:
      return Formula::implies(random_formula(rng, atoms, stands, depth - 1, core_only),
                              random_formula(rng, atoms, stands, depth - 1, core_only));
    default:
      return Formula::diamond(random_expr(rng, stands, 1),
                              random_formula(rng, atoms, stands, depth - 1, core_only));
  }
}

inline Structure random_structure(std::mt19937& rng, const std::vector<std::string>& atoms,
                                  const std::vector<std::string>& stands, int max_pi) {
  std::uniform_int_distribution<int> count(1, max_pi);
  int np = count(rng);
  std::vector<std::string> pis;
  for (int i = 1; i <= np; ++i) pis.push_back("w" + std::to_string(i));
  std::bernoulli_distribution flip(0.5);
  std::map<std::string, std::vector<std::string>> sigma, delta;
  for (const auto& s : stands) {
    std::vector<std::string> members;
    for (const auto& pi : pis)
      if (flip(rng)) members.push_back(pi);
    sigma[s] = members;
  }
  for (const auto& p : atoms) {
    std::vector<std::string> members;
    for (const auto& pi : pis)
      if (flip(rng)) members.push_back(pi);
    delta[p] = members;
  }
  return Structure::make(pis, sigma, delta);
}

// Exhaustive set of desugared formulas of AST depth <= max_depth over atoms
// {p, q}, standpoint symbols {s, t} and expression leaves {*, s, t}.
inline std::vector<FormulaPtr> exhaustive_corpus(int max_depth) {
  std::vector<ExprPtr> exprs{StandpointExpr::star(), StandpointExpr::named("s"),
                             StandpointExpr::named("t")};
  std::unordered_set<FormulaPtr, FormulaHash, FormulaEq> seen;
  std::vector<FormulaPtr> level;
  auto add = [&](std::vector<FormulaPtr>& into, const FormulaPtr& f) {
    if (seen.insert(f).second) into.push_back(f);
  };
  std::vector<FormulaPtr> all;
  add(all, Formula::tru());
  add(all, Formula::fls());
  add(all, Formula::atom("p"));
  add(all, Formula::atom("q"));
  for (const auto& e1 : exprs)
    for (const auto& e2 : exprs) add(all, Formula::sharper(e1, e2));
  level = all;

  for (int d = 2; d <= max_depth; ++d) {
    std::vector<FormulaPtr> next;
    const std::vector<FormulaPtr> prev = all;  // everything of depth < d
    for (const auto& f : prev) add(next, Formula::neg(f));
    for (const auto& f : prev)
      for (const auto& e : exprs) add(next, Formula::box(e, f));
    for (const auto& a : prev)
      for (const auto& b : prev) add(next, Formula::land(a, b));
    all.insert(all.end(), next.begin(), next.end());
  }
  return all;
}

}  // namespace spl::testgen
