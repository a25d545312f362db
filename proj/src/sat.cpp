#include "spl/sat.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace spl {

// ---- Tseitin clausification -----------------------------------------------------

namespace {

// Folds constants away; the result is either a single Const or constant-free.
PropPtr fold_constants(const PropPtr& f) {
  switch (f->kind) {
    case PKind::Const:
    case PKind::Lit: return f;
    case PKind::Not: {
      auto c = fold_constants(f->lhs);
      if (c->kind == PKind::Const) return PropFormula::constant(!c->value);
      return PropFormula::neg(c);
    }
    case PKind::And: {
      auto a = fold_constants(f->lhs), b = fold_constants(f->rhs);
      if (a->kind == PKind::Const) return a->value ? b : a;
      if (b->kind == PKind::Const) return b->value ? a : b;
      return PropFormula::land(a, b);
    }
    case PKind::Or: {
      auto a = fold_constants(f->lhs), b = fold_constants(f->rhs);
      if (a->kind == PKind::Const) return a->value ? a : b;
      if (b->kind == PKind::Const) return b->value ? b : a;
      return PropFormula::lor(a, b);
    }
    case PKind::Implies: {
      auto a = fold_constants(f->lhs), b = fold_constants(f->rhs);
      if (a->kind == PKind::Const)
        return a->value ? b : PropFormula::constant(true);
      if (b->kind == PKind::Const)
        return b->value ? b : PropFormula::neg(a);
      return PropFormula::implies(a, b);
    }
  }
  throw std::logic_error("unreachable");
}

void collect_atoms(const PropPtr& f, std::set<PropAtom>& out) {
  if (f->kind == PKind::Lit) out.insert(f->atom);
  if (f->lhs) collect_atoms(f->lhs, out);
  if (f->rhs) collect_atoms(f->rhs, out);
}

struct PropPtrHash {
  std::size_t operator()(const PropPtr& f) const { return f->hash; }
};
struct PropPtrEq {
  bool operator()(const PropPtr& a, const PropPtr& b) const { return prop_equal(a, b); }
};

}  // namespace

CnfResult to_cnf(const PropPtr& f, const Vocabulary& vocab) {
  CnfResult out;
  PropPtr g = fold_constants(f);
  if (g->kind == PKind::Const) {
    if (!g->value) out.cnf.clauses.push_back({});
    return out;
  }

  std::set<PropAtom> atoms;
  collect_atoms(g, atoms);
  for (const auto& a : atoms) {
    out.atom_vars[a] = ++out.cnf.num_vars;
    out.cnf.var_names.push_back(prop_atom_name(a, vocab));
  }

  std::unordered_map<PropPtr, int, PropPtrHash, PropPtrEq> cache;
  int aux_count = 0;
  auto& cnf = out.cnf;

  // Returns the literal standing for the subformula; introduces one auxiliary
  // variable per distinct compound node.
  auto encode = [&](auto&& self, const PropPtr& h) -> int {
    switch (h->kind) {
      case PKind::Lit: return out.atom_vars.at(h->atom);
      case PKind::Not: return -self(self, h->lhs);
      default: break;
    }
    auto it = cache.find(h);
    if (it != cache.end()) return it->second;
    int a = self(self, h->lhs);
    int b = self(self, h->rhs);
    int t = ++cnf.num_vars;
    cnf.var_names.push_back("_t" + std::to_string(++aux_count));
    switch (h->kind) {
      case PKind::And:
        cnf.clauses.push_back({-t, a});
        cnf.clauses.push_back({-t, b});
        cnf.clauses.push_back({t, -a, -b});
        break;
      case PKind::Or:
        cnf.clauses.push_back({-t, a, b});
        cnf.clauses.push_back({t, -a});
        cnf.clauses.push_back({t, -b});
        break;
      case PKind::Implies:
        cnf.clauses.push_back({-t, -a, b});
        cnf.clauses.push_back({t, a});
        cnf.clauses.push_back({t, -b});
        break;
      default: throw std::logic_error("unreachable");
    }
    cache.emplace(h, t);
    return t;
  };

  int root = encode(encode, g);
  cnf.clauses.push_back({root});
  return out;
}

// ---- DPLL solver --------------------------------------------------------------------

namespace {

struct Solver {
  const CnfFormula& cnf;
  std::uint64_t budget;
  std::uint64_t decisions = 0;

  std::vector<signed char> value;        // var-1 -> -1 unassigned / 0 / 1
  std::vector<int> trail;                // assigned vars in order
  std::vector<std::vector<int>> occ;     // var-1 -> clause indices; sign via clause scan
  std::vector<int> sat_count;            // per clause: # true literals
  std::vector<int> free_count;           // per clause: # unassigned literals
  std::vector<int> pos_active, neg_active;  // per var: occurrences in unsatisfied clauses
  std::size_t satisfied_clauses = 0;

  explicit Solver(const CnfFormula& c, std::uint64_t b) : cnf(c), budget(b) {
    value.assign(cnf.num_vars, -1);
    occ.assign(cnf.num_vars, {});
    sat_count.assign(cnf.clauses.size(), 0);
    free_count.assign(cnf.clauses.size(), 0);
    pos_active.assign(cnf.num_vars, 0);
    neg_active.assign(cnf.num_vars, 0);
    for (std::size_t ci = 0; ci < cnf.clauses.size(); ++ci) {
      free_count[ci] = static_cast<int>(cnf.clauses[ci].size());
      for (int lit : cnf.clauses[ci]) {
        int v = std::abs(lit) - 1;
        occ[v].push_back(static_cast<int>(ci));
        (lit > 0 ? pos_active : neg_active)[v]++;
      }
    }
  }

  void mark_satisfied(std::size_t ci) {
    ++satisfied_clauses;
    for (int lit : cnf.clauses[ci]) {
      int v = std::abs(lit) - 1;
      (lit > 0 ? pos_active : neg_active)[v]--;
    }
  }
  void unmark_satisfied(std::size_t ci) {
    --satisfied_clauses;
    for (int lit : cnf.clauses[ci]) {
      int v = std::abs(lit) - 1;
      (lit > 0 ? pos_active : neg_active)[v]++;
    }
  }

  // Assigns and propagates; false on conflict. Trail records everything for undo.
  bool assign(int var, bool val) {
    std::vector<int> queue{val ? var : -var};
    while (!queue.empty()) {
      int lit = queue.back();
      queue.pop_back();
      int v = std::abs(lit) - 1;
      bool want = lit > 0;
      if (value[v] != -1) {
        if (value[v] == static_cast<signed char>(want)) continue;
        return false;
      }
      value[v] = want ? 1 : 0;
      trail.push_back(v);
      for (int ci : occ[v]) {
        bool lit_true = false;
        for (int l : cnf.clauses[ci])
          if (std::abs(l) - 1 == v) { lit_true = (l > 0) == want; break; }
        if (lit_true) {
          if (sat_count[ci]++ == 0) mark_satisfied(ci);
          --free_count[ci];
        } else {
          --free_count[ci];
          if (sat_count[ci] == 0) {
            if (free_count[ci] == 0) return false;
            if (free_count[ci] == 1) {
              for (int l : cnf.clauses[ci])
                if (value[std::abs(l) - 1] == -1) { queue.push_back(l); break; }
            }
          }
        }
      }
    }
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail.size() > mark) {
      int v = trail.back();
      trail.pop_back();
      bool was = value[v] == 1;
      for (int ci : occ[v]) {
        bool lit_true = false;
        for (int l : cnf.clauses[ci])
          if (std::abs(l) - 1 == v) { lit_true = (l > 0) == was; break; }
        if (lit_true) {
          if (--sat_count[ci] == 0) unmark_satisfied(ci);
          ++free_count[ci];
        } else {
          ++free_count[ci];
        }
      }
      value[v] = -1;
    }
  }

  // Assigns every pure literal; false on conflict (cannot happen for genuine
  // pures, but propagation of one may conflict).
  bool assign_pures() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < cnf.num_vars; ++v) {
        if (value[v] != -1) continue;
        if (pos_active[v] > 0 && neg_active[v] == 0) {
          if (!assign(v + 1, true)) return false;
          changed = true;
        } else if (neg_active[v] > 0 && pos_active[v] == 0) {
          if (!assign(v + 1, false)) return false;
          changed = true;
        }
      }
    }
    return true;
  }

  bool search() {
    if (!assign_pures()) return false;
    if (satisfied_clauses == cnf.clauses.size()) return true;
    int branch = -1;
    for (int v = 0; v < cnf.num_vars; ++v)
      if (value[v] == -1) { branch = v; break; }
    if (branch < 0) return false;  // all assigned yet some clause unsatisfied
    if (++decisions > budget)
      throw BudgetError("decision budget of " + std::to_string(budget) + " exceeded");
    std::size_t mark = trail.size();
    if (assign(branch + 1, true) && search()) return true;
    undo_to(mark);
    if (assign(branch + 1, false) && search()) return true;
    undo_to(mark);
    return false;
  }
};

}  // namespace

SolveResult solve(const CnfFormula& cnf, std::uint64_t decision_budget) {
  for (const auto& clause : cnf.clauses)
    for (int lit : clause)
      if (lit == 0 || std::abs(lit) > cnf.num_vars)
        throw std::invalid_argument("literal " + std::to_string(lit) +
                                    " outside [1, " + std::to_string(cnf.num_vars) + "]");

  Solver s(cnf, decision_budget);
  for (const auto& clause : cnf.clauses)
    if (clause.empty()) return {SolveStatus::Unsat, {}, 0};

  // Seed propagation with the initial unit clauses, then search.
  bool ok = true;
  for (const auto& clause : cnf.clauses) {
    if (!ok) break;
    if (clause.size() == 1) {
      int lit = clause[0];
      ok = s.assign(std::abs(lit), lit > 0);
    }
  }
  if (ok) ok = s.search();

  SolveResult out;
  out.decisions = s.decisions;
  if (!ok) {
    out.status = SolveStatus::Unsat;
    return out;
  }
  out.status = SolveStatus::Sat;
  out.assignment.values.assign(cnf.num_vars, false);
  for (int v = 0; v < cnf.num_vars; ++v)
    if (s.value[v] == 1) out.assignment.values[v] = true;
  // Verifier pass: a SAT answer must satisfy every clause.
  for (const auto& clause : cnf.clauses) {
    bool sat = false;
    for (int lit : clause)
      if (out.assignment.value(std::abs(lit)) == (lit > 0)) { sat = true; break; }
    if (!sat) throw std::logic_error("internal error: model fails verification");
  }
  return out;
}

// ---- DIMACS ---------------------------------------------------------------------------

std::string emit_dimacs(const CnfFormula& cnf) {
  std::ostringstream os;
  for (int i = 0; i < static_cast<int>(cnf.var_names.size()); ++i)
    if (!cnf.var_names[i].empty())
      os << "c var " << (i + 1) << " " << cnf.var_names[i] << "\n";
  os << "p cnf " << cnf.num_vars << " " << cnf.clauses.size() << "\n";
  for (const auto& clause : cnf.clauses) {
    for (int lit : clause) os << lit << " ";
    os << "0\n";
  }
  return os.str();
}

CnfFormula parse_dimacs(const std::string& text) {
  CnfFormula cnf;
  bool have_header = false;
  long declared_clauses = 0;
  std::vector<std::pair<int, std::string>> names;
  std::vector<int> pending;

  std::istringstream is(text);
  std::string line;
  std::size_t offset = 0;
  while (std::getline(is, line)) {
    SourceSpan span{offset, offset + line.size()};
    offset += line.size() + 1;
    if (line.empty()) continue;
    if (line[0] == 'c') {
      std::istringstream ls(line);
      std::string c, kw, name;
      int idx;
      if (ls >> c >> kw && kw == "var" && ls >> idx >> name)
        names.emplace_back(idx, name);
      continue;
    }
    if (line[0] == 'p') {
      if (have_header) throw ParseError("duplicate DIMACS header", span);
      std::istringstream ls(line);
      std::string p, fmt;
      if (!(ls >> p >> fmt >> cnf.num_vars >> declared_clauses) || fmt != "cnf" ||
          cnf.num_vars < 0 || declared_clauses < 0)
        throw ParseError("malformed DIMACS header: " + line, span);
      std::string extra;
      if (ls >> extra) throw ParseError("malformed DIMACS header: " + line, span);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError("clause before DIMACS header", span);
    std::istringstream ls(line);
    long lit;
    while (ls >> lit) {
      if (lit == 0) {
        cnf.clauses.push_back(pending);
        pending.clear();
      } else {
        if (std::abs(lit) > cnf.num_vars)
          throw ParseError("literal " + std::to_string(lit) + " exceeds declared " +
                               std::to_string(cnf.num_vars) + " variables",
                           span);
        pending.push_back(static_cast<int>(lit));
      }
    }
    std::string rest;
    ls.clear();
    if (ls >> rest) throw ParseError("unexpected token " + rest, span);
  }
  if (!have_header) throw ParseError("missing DIMACS header", {0, text.size()});
  if (!pending.empty())
    throw ParseError("missing clause terminator at end of input", {text.size(), text.size()});
  if (static_cast<long>(cnf.clauses.size()) != declared_clauses)
    throw ParseError("clause count mismatch: declared " + std::to_string(declared_clauses) +
                         ", found " + std::to_string(cnf.clauses.size()),
                     {0, text.size()});
  cnf.var_names.assign(cnf.num_vars, "");
  for (const auto& [idx, name] : names) {
    if (idx < 1 || idx > cnf.num_vars)
      throw ParseError("name table index " + std::to_string(idx) + " out of range",
                       {0, text.size()});
    cnf.var_names[idx - 1] = name;
  }
  bool any_name = false;
  for (const auto& n : cnf.var_names) any_name = any_name || !n.empty();
  if (!any_name) cnf.var_names.clear();
  return cnf;
}

}  // namespace spl
