#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "spl/ast.hpp"
#include "spl/errors.hpp"

namespace spl {

// ---------------------------------------------------------------------------
// Sentential first-order standpoint logic: terms, formulas, finite structures
// for oracle evaluation, the modality-eliminating translation and TPTP output.
// ---------------------------------------------------------------------------

enum class TermKind { Var, Const };

struct Term {
  TermKind kind = TermKind::Const;
  std::string name;
  auto operator<=>(const Term&) const = default;
};

inline Term var(std::string n) { return {TermKind::Var, std::move(n)}; }
inline Term cst(std::string n) { return {TermKind::Const, std::move(n)}; }

enum class FoKind {
  Pred, Not, And, Or, Implies, Forall, Exists, Box, Diamond, Sharper, True, False
};

class FoFormula;
using FoPtr = std::shared_ptr<const FoFormula>;

class FoFormula {
public:
  FoKind kind;
  std::string pred;        // Pred
  std::vector<Term> args;  // Pred
  std::string var;         // Forall/Exists
  FoPtr lhs, rhs;
  ExprPtr expr, expr2;     // Box/Diamond: expr; Sharper: both
  std::size_t hash;

  static FoPtr tru();
  static FoPtr fls();
  static FoPtr pred_of(std::string name, std::vector<Term> args);
  static FoPtr neg(FoPtr f);
  static FoPtr land(FoPtr a, FoPtr b);
  static FoPtr lor(FoPtr a, FoPtr b);
  static FoPtr implies(FoPtr a, FoPtr b);
  static FoPtr forall(std::string v, FoPtr body);
  static FoPtr exists(std::string v, FoPtr body);
  static FoPtr box(ExprPtr e, FoPtr body);
  static FoPtr diamond(ExprPtr e, FoPtr body);
  static FoPtr sharper(ExprPtr a, ExprPtr b);
};

bool fo_equal(const FoPtr& a, const FoPtr& b);

struct FoHash {
  std::size_t operator()(const FoPtr& f) const { return f ? f->hash : 0; }
};
struct FoEq {
  bool operator()(const FoPtr& a, const FoPtr& b) const { return fo_equal(a, b); }
};

std::set<std::string> free_variables(const FoPtr& f);
std::size_t fo_size(const FoPtr& f);         // |Sub(f)|, structural dedup
std::size_t fo_modal_depth(const FoPtr& f);  // Sharper counts 0

// Predicate arities and constants; throws on inconsistent arity use.
struct FoSignature {
  std::map<std::string, int> predicates;
  std::set<std::string> constants;
};
FoSignature collect_fo_signature(const FoPtr& f);

// A formula is sentential when every Box/Diamond body is a sentence. On
// failure reports the first offending modal subformula and its free variables.
struct SententialVerdict {
  bool sentential = true;
  FoPtr offender;
  std::vector<std::string> free_vars;
};
SententialVerdict is_sentential(const FoPtr& f);

// Structure-preserving normal form with quantifier rules; definitional
// predicates take the free variables of the subformula they name, so modal
// bodies (sentences, by sententiality) get nullary labels. Definitions are
// universally closed. Output has modal depth <= 1 and stays sentential.
FoPtr fo_ssnf(const FoPtr& f);

// ---------------------------------------------------------------------------
// Finite-domain structures <Delta, Pi, sigma, gamma> for oracle evaluation.
// Domain elements and tuples are index-based. Constants are rigid; this is
// validated at construction.
// ---------------------------------------------------------------------------

struct FoInterpretation {
  std::map<std::string, std::set<std::vector<int>>> predicates;
  std::map<std::string, int> constants;
};

class FoStructure {
public:
  static FoStructure make(std::vector<std::string> domain,
                          std::vector<std::string> precisifications,
                          const std::map<std::string, std::vector<std::string>>& sigma,
                          std::vector<FoInterpretation> gamma);

  const std::vector<std::string>& domain() const { return domain_; }
  const std::vector<std::string>& precisifications() const { return pis_; }
  int pi_index(const std::string& pi) const;
  std::vector<bool> sigma_mask(const std::string& s) const;
  const std::map<std::string, std::vector<bool>>& sigma() const { return sigma_; }
  const FoInterpretation& gamma(std::size_t pi) const { return gamma_[pi]; }

private:
  std::vector<std::string> domain_;
  std::vector<std::string> pis_;
  std::map<std::string, std::vector<bool>> sigma_;
  std::vector<FoInterpretation> gamma_;
};

std::vector<bool> fo_sigma_eval(const FoStructure& m, const ExprPtr& e);

using VarAssignment = std::map<std::string, int>;  // variable -> domain index

bool fo_eval(const FoStructure& m, const std::string& pi, const VarAssignment& v,
             const FoPtr& f);
// All precisifications, all assignments over the free variables.
bool fo_eval_global(const FoStructure& m, const FoPtr& f);

// ---------------------------------------------------------------------------
// Trans_n to plain first-order logic: predicates duplicated per
// precisification (P@pi), standpoint and star atoms as nullary predicates.
// Constants are not duplicated. Requires sentential input of modal depth <= 1.
// ---------------------------------------------------------------------------

struct FoTranslation {
  FoPtr formula;
  std::vector<std::string> pi_labels;
};
FoTranslation fo_translate(const FoPtr& f, std::size_t n);

// The superposed plain structure of m over the renamed vocabulary, using m's
// own precisification labels (align them with the translation's pi_labels
// when checking the correspondence).
FoInterpretation superpose(const FoStructure& m);

// Evaluation of modality-free formulas in a plain interpretation.
bool fo_eval_plain(const FoInterpretation& interp, std::size_t domain_size,
                   const VarAssignment& v, const FoPtr& f);

// ---------------------------------------------------------------------------
// TPTP FOF output for closed modality-free formulas. Predicate/constant names
// are mangled to lowercase ("P@pi1" -> "p__pi1"), variables to uppercase; the
// mangling table is returned for reversibility. The emitted unit is checked
// by a small syntax validator (balance, arity consistency).
// ---------------------------------------------------------------------------

struct TptpResult {
  std::string text;
  std::vector<std::pair<std::string, std::string>> name_map;  // mangled -> original
};
TptpResult to_tptp(const FoPtr& f, const std::string& name);

// Text syntax: the propositional grammar extended with predicate application
// "P(t1,...,tk)", "! x ." (forall) and "? x ." (exists). An identifier in
// term position is a variable iff it is bound by an enclosing quantifier.
FoPtr parse_fo_formula(const std::string& text);
std::string print_fo_formula(const FoPtr& f);

}  // namespace spl
