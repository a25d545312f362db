#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace spl {

// ---------------------------------------------------------------------------
// Standpoint expressions: the set algebra over standpoint symbols plus the
// universal standpoint '*'.
// ---------------------------------------------------------------------------

enum class ExprKind { Star, Named, Union, Inter, Diff };

class StandpointExpr;
using ExprPtr = std::shared_ptr<const StandpointExpr>;

class StandpointExpr {
public:
  ExprKind kind;
  std::string name;   // Named only
  ExprPtr left;       // Union/Inter/Diff
  ExprPtr right;
  std::size_t hash;

  static ExprPtr star();
  static ExprPtr named(std::string n);
  static ExprPtr union_of(ExprPtr a, ExprPtr b);
  static ExprPtr inter_of(ExprPtr a, ExprPtr b);
  static ExprPtr diff_of(ExprPtr a, ExprPtr b);
};

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// ---------------------------------------------------------------------------
// Formulas. Immutable shared trees; structural equality is hash-guarded.
// A "core" formula (post-desugar) contains no Or/Implies/Diamond nodes.
// ---------------------------------------------------------------------------

enum class FKind { True, False, Atom, Not, And, Or, Implies, Box, Diamond, Sharper };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
public:
  FKind kind;
  std::string name;   // Atom only
  FormulaPtr lhs;     // Not/Box/Diamond: child; And/Or/Implies: left
  FormulaPtr rhs;     // And/Or/Implies: right
  ExprPtr expr;       // Box/Diamond: label; Sharper: left expression
  ExprPtr expr2;      // Sharper: right expression
  std::size_t hash;

  static FormulaPtr tru();
  static FormulaPtr fls();
  static FormulaPtr atom(std::string n);
  static FormulaPtr neg(FormulaPtr f);
  static FormulaPtr land(FormulaPtr a, FormulaPtr b);
  static FormulaPtr lor(FormulaPtr a, FormulaPtr b);
  static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
  static FormulaPtr box(ExprPtr e, FormulaPtr f);
  static FormulaPtr diamond(ExprPtr e, FormulaPtr f);
  static FormulaPtr sharper(ExprPtr a, ExprPtr b);
};

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);

struct FormulaHash {
  std::size_t operator()(const FormulaPtr& f) const { return f ? f->hash : 0; }
};
struct FormulaEq {
  bool operator()(const FormulaPtr& a, const FormulaPtr& b) const {
    return formula_equal(a, b);
  }
};

// ---------------------------------------------------------------------------
// Subformula index: deduplicated subformulas in topological order (children
// before parents, root last), with dense indices and canonical labels for
// the derived precisification set.
// ---------------------------------------------------------------------------

class SubformulaIndex {
public:
  explicit SubformulaIndex(const FormulaPtr& root);

  const std::vector<FormulaPtr>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  // -1 when f is not a subformula of the root.
  int index_of(const FormulaPtr& f) const;
  const FormulaPtr& root() const { return entries_.back(); }
  // Canonical precisification label for entry i.
  std::string label(std::size_t i) const;

private:
  std::vector<FormulaPtr> entries_;
  std::unordered_map<FormulaPtr, int, FormulaHash, FormulaEq> index_;
};

// |Sub(f)|, the size measure used throughout.
std::size_t formula_size(const FormulaPtr& f);

// Eliminates Or/Implies/Diamond via the classical macros; Sharper is kept
// unless lower_sharpening is set, in which case it becomes Box(Diff, False).
FormulaPtr desugar(const FormulaPtr& f, bool lower_sharpening = false);

// Pushes negation down to atoms/constants/Sharper leaves. Reintroduces
// Diamond as the dual of Box and Or via De Morgan.
FormulaPtr nnf(const FormulaPtr& f);

// Occurring propositional atoms and standpoint symbols, each sorted.
struct SymbolSet {
  std::vector<std::string> atoms;
  std::vector<std::string> standpoints;
};
SymbolSet collect_symbols(const FormulaPtr& f);
void collect_expr_symbols(const ExprPtr& e, std::vector<std::string>& out);

}  // namespace spl
