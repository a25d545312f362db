#pragma once

#include <string>

#include "spl/ast.hpp"
#include "spl/errors.hpp"
#include "spl/semantics.hpp"

namespace spl {

// Concrete syntax (whitespace-insensitive):
//   formula := iff ; iff := impl ("<->" impl)* ; impl := or ("->" or)*  (right-assoc)
//   or := and ("|" and)* ; and := unary ("&" unary)*
//   unary := "~" unary | "[" sexpr "]" unary | "<" sexpr ">" unary | atom
//   atom := "true" | "false" | ident | "(" formula ")" | "(" sexpr "<=" sexpr ")"
//   sexpr := sunion ("\" sunion)*  (left-assoc) ; sunion := sinter ("u" sinter)*
//   sinter := sleaf ("n" sleaf)* ; sleaf := "*" | ident | "(" sexpr ")"
//   ident := [A-Za-z_][A-Za-z0-9_]*   (reserved: true, false, u, n)
// "<->" is lowered at parse time to the conjunction of both implications.
FormulaPtr parse_formula(const std::string& text);

// Minimal-parentheses rendering; parse_formula(print_formula(f)) is
// structurally identical to f.
std::string print_formula(const FormulaPtr& f);
std::string print_expr(const ExprPtr& e);

// Structure JSON: {"precisifications":[...],"sigma":{s:[...]},"delta":{p:[...]}}.
// "*" must not appear as a sigma key.
Structure parse_structure(const std::string& text);
std::string print_structure(const Structure& m, int indent = 2);

}  // namespace spl
