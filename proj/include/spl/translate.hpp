#pragma once

#include <compare>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "spl/ast.hpp"
#include "spl/semantics.hpp"

namespace spl {

// ---------------------------------------------------------------------------
// Target language of the translation: plain propositional logic over the
// vocabulary PV = { p@pi, s@pi, *@pi } for a fixed precisification set Pi_n.
// ---------------------------------------------------------------------------

enum class PropAtomKind { AtomAt, StandAt, StarAt };

struct PropAtom {
  PropAtomKind kind = PropAtomKind::StarAt;
  std::string name;  // AtomAt: atom symbol; StandAt: standpoint symbol
  int pi = 0;        // index into the translation's precisification labels

  auto operator<=>(const PropAtom&) const = default;
};

enum class PKind { Const, Lit, Not, And, Or, Implies };

class PropFormula;
using PropPtr = std::shared_ptr<const PropFormula>;

class PropFormula {
public:
  PKind kind;
  bool value = false;  // Const
  PropAtom atom;       // Lit
  PropPtr lhs, rhs;
  std::size_t hash;

  static PropPtr constant(bool v);
  static PropPtr lit(PropAtom a);
  static PropPtr neg(PropPtr f);
  static PropPtr land(PropPtr a, PropPtr b);
  static PropPtr lor(PropPtr a, PropPtr b);
  static PropPtr implies(PropPtr a, PropPtr b);
};

bool prop_equal(const PropPtr& a, const PropPtr& b);

struct Vocabulary {
  std::vector<std::string> pi_labels;     // Pi_n, in index order
  std::vector<std::string> atoms;         // occurring propositional symbols, sorted
  std::vector<std::string> standpoints;   // occurring standpoint symbols, sorted

  std::size_t n() const { return pi_labels.size(); }
  // Every PropAtom of the vocabulary: atom and standpoint grids plus stars.
  std::vector<PropAtom> all() const;
};

// Total on the vocabulary it was built for; absent entries read as false.
struct Valuation {
  std::map<PropAtom, bool> values;
  bool at(const PropAtom& a) const {
    auto it = values.find(a);
    return it != values.end() && it->second;
  }
};

// trans_E: Boolean structure of a standpoint expression at one precisification.
PropPtr trans_expr(int pi, const ExprPtr& e);

struct Translation {
  PropPtr formula;
  Vocabulary vocab;
};

// Trans_n(f): the conjunction over Pi_n of the per-precisification renderings
// of f, conjoined with all star atoms. Identical per-precisification conjuncts
// (arising from pi-independent subformulas) are deduplicated syntactically.
// n must be >= 1; the conventional default is |Sub(f)|.
Translation translate_formula(const FormulaPtr& f, std::size_t n);

// M_v: the structure read off a valuation. Star atoms present in v are
// checked (they must be true whenever v satisfies a translation) and not
// stored.
Structure extract_model(const Valuation& v, const Vocabulary& vocab);

// v_M: the valuation embedding a standard-form structure; requires the
// structure's precisification set to equal the vocabulary's.
Valuation encode_model(const Structure& m, const Vocabulary& vocab);

bool prop_eval(const PropPtr& f, const Valuation& v);

std::string prop_atom_name(const PropAtom& a, const Vocabulary& vocab);
std::string print_prop(const PropPtr& f, const Vocabulary& vocab);

// Tree node count (shared subterms counted once per occurrence).
std::size_t prop_node_count(const PropPtr& f);

// Diagnostic bound from the occurring standpoint symbols plus the number of
// distinct Diamond subformulas; an optional alternative to |Sub(f)|.
std::size_t precisification_hint(const FormulaPtr& f);

}  // namespace spl
