#pragma once

#include <cstddef>
#include <string>

#include "spl/ast.hpp"

namespace spl {

// Nesting depth of modal operators. Sharper counts as depth 0: its value is
// precisification-independent and it translates flatly.
std::size_t modal_depth(const FormulaPtr& f);

// Prefix of generated definitional literals.
inline const char* ssnf_label_prefix() { return "_def_"; }

struct SsnfResult {
  FormulaPtr formula;
  std::size_t positive_defs = 0;
  std::size_t negative_defs = 0;
};

// Structure-preserving transformation to standpoint standard normal form:
// one definitional implication per compound subformula occurrence polarity,
// with literals standing for themselves. The result has modal depth <= 1 and
// is equisatisfiable with the input (per satisfiability mode). Input must be
// desugared; Diamond is permitted.
SsnfResult ssnf_with_stats(const FormulaPtr& f);
FormulaPtr ssnf(const FormulaPtr& f);

}  // namespace spl
