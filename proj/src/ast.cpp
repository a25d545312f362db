#include "spl/ast.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace spl {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  // boost::hash_combine
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t str_hash(const std::string& s) { return std::hash<std::string>{}(s); }

}  // namespace

// ---- StandpointExpr -------------------------------------------------------

static ExprPtr make_expr(ExprKind k, std::string name, ExprPtr l, ExprPtr r) {
  auto e = std::make_shared<StandpointExpr>();
  e->kind = k;
  e->name = std::move(name);
  e->left = std::move(l);
  e->right = std::move(r);
  std::size_t h = mix(0x51, static_cast<std::size_t>(k));
  h = mix(h, str_hash(e->name));
  if (e->left) h = mix(h, e->left->hash);
  if (e->right) h = mix(h, e->right->hash);
  e->hash = h;
  return e;
}

ExprPtr StandpointExpr::star() {
  static const ExprPtr instance = make_expr(ExprKind::Star, "", nullptr, nullptr);
  return instance;
}

ExprPtr StandpointExpr::named(std::string n) {
  if (n.empty()) throw std::invalid_argument("standpoint name must be non-empty");
  return make_expr(ExprKind::Named, std::move(n), nullptr, nullptr);
}

ExprPtr StandpointExpr::union_of(ExprPtr a, ExprPtr b) {
  return make_expr(ExprKind::Union, "", std::move(a), std::move(b));
}
ExprPtr StandpointExpr::inter_of(ExprPtr a, ExprPtr b) {
  return make_expr(ExprKind::Inter, "", std::move(a), std::move(b));
}
ExprPtr StandpointExpr::diff_of(ExprPtr a, ExprPtr b) {
  return make_expr(ExprKind::Diff, "", std::move(a), std::move(b));
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->hash != b->hash || a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::Star: return true;
    case ExprKind::Named: return a->name == b->name;
    default: return expr_equal(a->left, b->left) && expr_equal(a->right, b->right);
  }
}

// ---- Formula ---------------------------------------------------------------

static FormulaPtr make_formula(FKind k, std::string name, FormulaPtr l, FormulaPtr r,
                               ExprPtr e, ExprPtr e2) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->name = std::move(name);
  f->lhs = std::move(l);
  f->rhs = std::move(r);
  f->expr = std::move(e);
  f->expr2 = std::move(e2);
  std::size_t h = mix(0xf0, static_cast<std::size_t>(k));
  h = mix(h, str_hash(f->name));
  if (f->lhs) h = mix(h, f->lhs->hash);
  if (f->rhs) h = mix(h, f->rhs->hash);
  if (f->expr) h = mix(h, f->expr->hash);
  if (f->expr2) h = mix(h, f->expr2->hash);
  f->hash = h;
  return f;
}

FormulaPtr Formula::tru() {
  static const FormulaPtr instance =
      make_formula(FKind::True, "", nullptr, nullptr, nullptr, nullptr);
  return instance;
}
FormulaPtr Formula::fls() {
  static const FormulaPtr instance =
      make_formula(FKind::False, "", nullptr, nullptr, nullptr, nullptr);
  return instance;
}
FormulaPtr Formula::atom(std::string n) {
  if (n.empty()) throw std::invalid_argument("atom name must be non-empty");
  return make_formula(FKind::Atom, std::move(n), nullptr, nullptr, nullptr, nullptr);
}
FormulaPtr Formula::neg(FormulaPtr f) {
  return make_formula(FKind::Not, "", std::move(f), nullptr, nullptr, nullptr);
}
FormulaPtr Formula::land(FormulaPtr a, FormulaPtr b) {
  return make_formula(FKind::And, "", std::move(a), std::move(b), nullptr, nullptr);
}
FormulaPtr Formula::lor(FormulaPtr a, FormulaPtr b) {
  return make_formula(FKind::Or, "", std::move(a), std::move(b), nullptr, nullptr);
}
FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) {
  return make_formula(FKind::Implies, "", std::move(a), std::move(b), nullptr, nullptr);
}
FormulaPtr Formula::box(ExprPtr e, FormulaPtr f) {
  return make_formula(FKind::Box, "", std::move(f), nullptr, std::move(e), nullptr);
}
FormulaPtr Formula::diamond(ExprPtr e, FormulaPtr f) {
  return make_formula(FKind::Diamond, "", std::move(f), nullptr, std::move(e), nullptr);
}
FormulaPtr Formula::sharper(ExprPtr a, ExprPtr b) {
  return make_formula(FKind::Sharper, "", nullptr, nullptr, std::move(a), std::move(b));
}

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->hash != b->hash || a->kind != b->kind) return false;
  switch (a->kind) {
    case FKind::True:
    case FKind::False: return true;
    case FKind::Atom: return a->name == b->name;
    case FKind::Not: return formula_equal(a->lhs, b->lhs);
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
      return formula_equal(a->lhs, b->lhs) && formula_equal(a->rhs, b->rhs);
    case FKind::Box:
    case FKind::Diamond:
      return expr_equal(a->expr, b->expr) && formula_equal(a->lhs, b->lhs);
    case FKind::Sharper:
      return expr_equal(a->expr, b->expr) && expr_equal(a->expr2, b->expr2);
  }
  return false;
}

// ---- SubformulaIndex -------------------------------------------------------

SubformulaIndex::SubformulaIndex(const FormulaPtr& root) {
  if (!root) throw std::invalid_argument("null formula");
  // Post-order walk; duplicates (structural) collapse onto one entry.
  std::vector<std::pair<FormulaPtr, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [f, expanded] = stack.back();
    stack.pop_back();
    if (index_.count(f)) continue;
    if (expanded) {
      index_.emplace(f, static_cast<int>(entries_.size()));
      entries_.push_back(f);
      continue;
    }
    stack.push_back({f, true});
    if (f->rhs) stack.push_back({f->rhs, false});
    if (f->lhs) stack.push_back({f->lhs, false});
  }
}

int SubformulaIndex::index_of(const FormulaPtr& f) const {
  auto it = index_.find(f);
  return it == index_.end() ? -1 : it->second;
}

std::string SubformulaIndex::label(std::size_t i) const {
  return "pi" + std::to_string(i + 1);
}

std::size_t formula_size(const FormulaPtr& f) { return SubformulaIndex(f).size(); }

// ---- desugar ---------------------------------------------------------------

FormulaPtr desugar(const FormulaPtr& f, bool lower_sharpening) {
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
    case FKind::Atom: return f;
    case FKind::Not: {
      auto c = desugar(f->lhs, lower_sharpening);
      return c.get() == f->lhs.get() ? f : Formula::neg(c);
    }
    case FKind::And: {
      auto a = desugar(f->lhs, lower_sharpening);
      auto b = desugar(f->rhs, lower_sharpening);
      return (a.get() == f->lhs.get() && b.get() == f->rhs.get()) ? f : Formula::land(a, b);
    }
    case FKind::Or: {
      auto a = desugar(f->lhs, lower_sharpening);
      auto b = desugar(f->rhs, lower_sharpening);
      return Formula::neg(Formula::land(Formula::neg(a), Formula::neg(b)));
    }
    case FKind::Implies: {
      auto a = desugar(f->lhs, lower_sharpening);
      auto b = desugar(f->rhs, lower_sharpening);
      return Formula::neg(Formula::land(a, Formula::neg(b)));
    }
    case FKind::Box: {
      auto c = desugar(f->lhs, lower_sharpening);
      return c.get() == f->lhs.get() ? f : Formula::box(f->expr, c);
    }
    case FKind::Diamond: {
      auto c = desugar(f->lhs, lower_sharpening);
      return Formula::neg(Formula::box(f->expr, Formula::neg(c)));
    }
    case FKind::Sharper:
      if (lower_sharpening)
        return Formula::box(StandpointExpr::diff_of(f->expr, f->expr2), Formula::fls());
      return f;
  }
  throw std::logic_error("unreachable");
}

// ---- nnf -------------------------------------------------------------------

static FormulaPtr nnf_pos(const FormulaPtr& f);
static FormulaPtr nnf_neg(const FormulaPtr& f);

static FormulaPtr nnf_pos(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
    case FKind::Atom:
    case FKind::Sharper: return f;
    case FKind::Not: return nnf_neg(f->lhs);
    case FKind::And: return Formula::land(nnf_pos(f->lhs), nnf_pos(f->rhs));
    case FKind::Or: return Formula::lor(nnf_pos(f->lhs), nnf_pos(f->rhs));
    case FKind::Implies: return Formula::lor(nnf_neg(f->lhs), nnf_pos(f->rhs));
    case FKind::Box: return Formula::box(f->expr, nnf_pos(f->lhs));
    case FKind::Diamond: return Formula::diamond(f->expr, nnf_pos(f->lhs));
  }
  throw std::logic_error("unreachable");
}

static FormulaPtr nnf_neg(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::True: return Formula::fls();
    case FKind::False: return Formula::tru();
    case FKind::Atom:
    case FKind::Sharper: return Formula::neg(f);
    case FKind::Not: return nnf_pos(f->lhs);
    case FKind::And: return Formula::lor(nnf_neg(f->lhs), nnf_neg(f->rhs));
    case FKind::Or: return Formula::land(nnf_neg(f->lhs), nnf_neg(f->rhs));
    case FKind::Implies: return Formula::land(nnf_pos(f->lhs), nnf_neg(f->rhs));
    case FKind::Box: return Formula::diamond(f->expr, nnf_neg(f->lhs));
    case FKind::Diamond: return Formula::box(f->expr, nnf_neg(f->lhs));
  }
  throw std::logic_error("unreachable");
}

FormulaPtr nnf(const FormulaPtr& f) { return nnf_pos(f); }

// ---- symbol collection -----------------------------------------------------

void collect_expr_symbols(const ExprPtr& e, std::vector<std::string>& out) {
  if (!e) return;
  if (e->kind == ExprKind::Named) out.push_back(e->name);
  collect_expr_symbols(e->left, out);
  collect_expr_symbols(e->right, out);
}

SymbolSet collect_symbols(const FormulaPtr& f) {
  std::set<std::string> atoms, stands;
  std::vector<FormulaPtr> stack{f};
  while (!stack.empty()) {
    auto cur = stack.back();
    stack.pop_back();
    if (cur->kind == FKind::Atom) atoms.insert(cur->name);
    std::vector<std::string> names;
    collect_expr_symbols(cur->expr, names);
    collect_expr_symbols(cur->expr2, names);
    stands.insert(names.begin(), names.end());
    if (cur->lhs) stack.push_back(cur->lhs);
    if (cur->rhs) stack.push_back(cur->rhs);
  }
  SymbolSet out;
  out.atoms.assign(atoms.begin(), atoms.end());
  out.standpoints.assign(stands.begin(), stands.end());
  return out;
}

}  // namespace spl
