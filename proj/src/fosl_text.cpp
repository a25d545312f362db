#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lexer.hpp"
#include "spl/fosl.hpp"

namespace spl {

using detail::Cursor;
using detail::Tok;

// ---- parser -------------------------------------------------------------------

namespace {

ExprPtr fo_parse_sexpr(Cursor& cur);  // same standpoint-expression grammar

ExprPtr fo_parse_sleaf(Cursor& cur) {
  if (cur.accept(Tok::Star)) return StandpointExpr::star();
  if (cur.at(Tok::Ident)) return StandpointExpr::named(cur.next().text);
  if (cur.accept(Tok::LParen)) {
    auto e = fo_parse_sexpr(cur);
    cur.expect(Tok::RParen, "to close standpoint expression");
    return e;
  }
  throw ParseError(std::string("expected standpoint expression, found ") +
                       detail::tok_name(cur.peek().kind),
                   cur.peek().span);
}

ExprPtr fo_parse_sinter(Cursor& cur) {
  auto e = fo_parse_sleaf(cur);
  while (cur.accept(Tok::KwN)) e = StandpointExpr::inter_of(e, fo_parse_sleaf(cur));
  return e;
}
ExprPtr fo_parse_sunion(Cursor& cur) {
  auto e = fo_parse_sinter(cur);
  while (cur.accept(Tok::KwU)) e = StandpointExpr::union_of(e, fo_parse_sinter(cur));
  return e;
}
ExprPtr fo_parse_sexpr(Cursor& cur) {
  auto e = fo_parse_sunion(cur);
  while (cur.accept(Tok::Backslash)) e = StandpointExpr::diff_of(e, fo_parse_sunion(cur));
  return e;
}

struct FoParser {
  Cursor& cur;
  std::vector<std::string> scope;  // bound variables, innermost last

  bool bound(const std::string& name) const {
    return std::find(scope.rbegin(), scope.rend(), name) != scope.rend();
  }

  FoPtr parse_iff() {
    auto f = parse_impl();
    while (cur.accept(Tok::DArrow)) {
      auto g = parse_impl();
      f = FoFormula::land(FoFormula::implies(f, g), FoFormula::implies(g, f));
    }
    return f;
  }

  FoPtr parse_impl() {
    std::vector<FoPtr> parts{parse_or()};
    while (cur.accept(Tok::Arrow)) parts.push_back(parse_or());
    auto f = parts.back();
    for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it)
      f = FoFormula::implies(*it, f);
    return f;
  }

  FoPtr parse_or() {
    auto f = parse_and();
    while (cur.accept(Tok::Pipe)) f = FoFormula::lor(f, parse_and());
    return f;
  }

  FoPtr parse_and() {
    auto f = parse_unary();
    while (cur.accept(Tok::Amp)) f = FoFormula::land(f, parse_unary());
    return f;
  }

  FoPtr parse_unary() {
    if (cur.accept(Tok::Tilde)) return FoFormula::neg(parse_unary());
    if (cur.accept(Tok::LBrack)) {
      auto e = fo_parse_sexpr(cur);
      cur.expect(Tok::RBrack, "to close box label");
      return FoFormula::box(e, parse_unary());
    }
    if (cur.accept(Tok::Langle)) {
      auto e = fo_parse_sexpr(cur);
      cur.expect(Tok::Rangle, "to close diamond label");
      return FoFormula::diamond(e, parse_unary());
    }
    if (cur.accept(Tok::Bang)) return parse_quantified(true);
    if (cur.accept(Tok::Question)) return parse_quantified(false);
    return parse_atom();
  }

  FoPtr parse_quantified(bool universal) {
    auto v = cur.expect(Tok::Ident, "after quantifier").text;
    cur.expect(Tok::Dot, "after quantified variable");
    scope.push_back(v);
    auto body = parse_unary();
    scope.pop_back();
    return universal ? FoFormula::forall(v, body) : FoFormula::exists(v, body);
  }

  FoPtr parse_atom() {
    if (cur.accept(Tok::True)) return FoFormula::tru();
    if (cur.accept(Tok::False)) return FoFormula::fls();
    if (cur.at(Tok::Ident)) {
      auto name = cur.next().text;
      std::vector<Term> args;
      if (cur.accept(Tok::LParen)) {
        do {
          auto t = cur.expect(Tok::Ident, "as predicate argument").text;
          args.push_back(bound(t) ? var(t) : cst(t));
        } while (cur.accept(Tok::Comma));
        cur.expect(Tok::RParen, "to close argument list");
      }
      return FoFormula::pred_of(name, std::move(args));
    }
    if (cur.at(Tok::LParen)) {
      std::size_t mark = cur.save();
      cur.next();
      try {
        auto e1 = fo_parse_sexpr(cur);
        if (cur.accept(Tok::SharpLe)) {
          auto e2 = fo_parse_sexpr(cur);
          cur.expect(Tok::RParen, "to close sharpening statement");
          return FoFormula::sharper(e1, e2);
        }
      } catch (const ParseError&) {
      }
      cur.restore(mark);
      cur.next();
      auto f = parse_iff();
      cur.expect(Tok::RParen, "to close subformula");
      return f;
    }
    throw ParseError(std::string("expected formula, found ") +
                         detail::tok_name(cur.peek().kind),
                     cur.peek().span);
  }
};

void collect_fo_names(const FoPtr& f, std::set<std::string>& preds,
                      std::set<std::string>& consts, std::set<std::string>& vars,
                      std::set<std::string>& stands) {
  if (f->kind == FoKind::Pred) {
    preds.insert(f->pred);
    for (const auto& t : f->args)
      (t.kind == TermKind::Var ? vars : consts).insert(t.name);
  }
  if (f->kind == FoKind::Forall || f->kind == FoKind::Exists) vars.insert(f->var);
  std::vector<std::string> names;
  collect_expr_symbols(f->expr, names);
  collect_expr_symbols(f->expr2, names);
  stands.insert(names.begin(), names.end());
  if (f->lhs) collect_fo_names(f->lhs, preds, consts, vars, stands);
  if (f->rhs) collect_fo_names(f->rhs, preds, consts, vars, stands);
}

}  // namespace

FoPtr parse_fo_formula(const std::string& text) {
  Cursor cur(detail::lex(text));
  FoParser parser{cur, {}};
  auto f = parser.parse_iff();
  cur.expect(Tok::End, "after formula");

  try {
    collect_fo_signature(f);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), {0, text.size()});
  }
  std::set<std::string> preds, consts, vars, stands;
  collect_fo_names(f, preds, consts, vars, stands);
  auto overlap = [&](const std::set<std::string>& a, const std::set<std::string>& b,
                     const char* what) {
    for (const auto& n : a)
      if (b.count(n))
        throw ParseError("name " + n + " used as both " + what, {0, text.size()});
  };
  overlap(preds, consts, "predicate and constant");
  overlap(preds, vars, "predicate and variable");
  overlap(consts, vars, "constant and variable");
  overlap(stands, preds, "standpoint and predicate");
  overlap(stands, consts, "standpoint and constant");
  return f;
}

// ---- printer -------------------------------------------------------------------

namespace {

void print_fo_sexpr(const ExprPtr& e, int min_prec, std::string& out) {
  int prec;
  switch (e->kind) {
    case ExprKind::Star:
    case ExprKind::Named: prec = 4; break;
    case ExprKind::Inter: prec = 3; break;
    case ExprKind::Union: prec = 2; break;
    default: prec = 1;
  }
  bool parens = prec < min_prec;
  if (parens) out += "(";
  switch (e->kind) {
    case ExprKind::Star: out += "*"; break;
    case ExprKind::Named: out += e->name; break;
    case ExprKind::Inter:
      print_fo_sexpr(e->left, 3, out);
      out += " n ";
      print_fo_sexpr(e->right, 4, out);
      break;
    case ExprKind::Union:
      print_fo_sexpr(e->left, 2, out);
      out += " u ";
      print_fo_sexpr(e->right, 3, out);
      break;
    case ExprKind::Diff:
      print_fo_sexpr(e->left, 1, out);
      out += " \\ ";
      print_fo_sexpr(e->right, 2, out);
      break;
  }
  if (parens) out += ")";
}

void print_fo(const FoPtr& f, int min_prec, std::string& out) {
  int prec;
  switch (f->kind) {
    case FoKind::Implies: prec = 1; break;
    case FoKind::Or: prec = 2; break;
    case FoKind::And: prec = 3; break;
    case FoKind::Not:
    case FoKind::Box:
    case FoKind::Diamond:
    case FoKind::Forall:
    case FoKind::Exists: prec = 4; break;
    default: prec = 5;
  }
  bool parens = prec < min_prec;
  if (parens) out += "(";
  switch (f->kind) {
    case FoKind::True: out += "true"; break;
    case FoKind::False: out += "false"; break;
    case FoKind::Pred:
      out += f->pred;
      if (!f->args.empty()) {
        out += "(";
        for (std::size_t i = 0; i < f->args.size(); ++i) {
          if (i) out += ",";
          out += f->args[i].name;
        }
        out += ")";
      }
      break;
    case FoKind::Sharper:
      out += "(";
      print_fo_sexpr(f->expr, 1, out);
      out += " <= ";
      print_fo_sexpr(f->expr2, 1, out);
      out += ")";
      break;
    case FoKind::Not:
      out += "~";
      print_fo(f->lhs, 4, out);
      break;
    case FoKind::Box:
      out += "[";
      print_fo_sexpr(f->expr, 1, out);
      out += "] ";
      print_fo(f->lhs, 4, out);
      break;
    case FoKind::Diamond:
      out += "<";
      print_fo_sexpr(f->expr, 1, out);
      out += "> ";
      print_fo(f->lhs, 4, out);
      break;
    case FoKind::Forall:
      out += "! " + f->var + " . ";
      print_fo(f->lhs, 4, out);
      break;
    case FoKind::Exists:
      out += "? " + f->var + " . ";
      print_fo(f->lhs, 4, out);
      break;
    case FoKind::And:
      print_fo(f->lhs, 3, out);
      out += " & ";
      print_fo(f->rhs, 4, out);
      break;
    case FoKind::Or:
      print_fo(f->lhs, 2, out);
      out += " | ";
      print_fo(f->rhs, 3, out);
      break;
    case FoKind::Implies:
      print_fo(f->lhs, 2, out);
      out += " -> ";
      print_fo(f->rhs, 1, out);
      break;
  }
  if (parens) out += ")";
}

}  // namespace

std::string print_fo_formula(const FoPtr& f) {
  std::string out;
  print_fo(f, 1, out);
  return out;
}

// ---- TPTP ----------------------------------------------------------------------

namespace {

std::string mangle_word(const std::string& name, bool upper) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      out += static_cast<char>(upper ? c : std::tolower(static_cast<unsigned char>(c)));
    else if (c == '_') out += '_';
    else if (c == '@') out += "__";
    else if (c == '*') out += "star";
  }
  while (!out.empty() && out.front() == '_') out.erase(out.begin());
  if (upper) {
    if (out.empty() || !std::isalpha(static_cast<unsigned char>(out[0]))) out = "X" + out;
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  } else {
    if (out.empty() || !std::isalpha(static_cast<unsigned char>(out[0]))) out = "p" + out;
    out[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(out[0])));
  }
  return out;
}

struct Mangler {
  std::map<std::string, std::string> table;  // original -> mangled
  std::set<std::string> used;

  const std::string& get(const std::string& original, bool upper) {
    auto it = table.find(original);
    if (it != table.end()) return it->second;
    std::string m = mangle_word(original, upper);
    std::string candidate = m;
    int salt = 1;
    while (!used.insert(candidate).second) candidate = m + "_" + std::to_string(++salt);
    return table.emplace(original, candidate).first->second;
  }
};

void render_tptp(const FoPtr& f, Mangler& mg, std::string& out) {
  switch (f->kind) {
    case FoKind::True: out += "$true"; break;
    case FoKind::False: out += "$false"; break;
    case FoKind::Pred:
      out += mg.get(f->pred, false);
      if (!f->args.empty()) {
        out += "(";
        for (std::size_t i = 0; i < f->args.size(); ++i) {
          if (i) out += ",";
          out += mg.get(f->args[i].name, f->args[i].kind == TermKind::Var);
        }
        out += ")";
      }
      break;
    case FoKind::Not:
      out += "~ ";
      render_tptp(f->lhs, mg, out);
      break;
    case FoKind::And:
    case FoKind::Or:
    case FoKind::Implies:
      out += "(";
      render_tptp(f->lhs, mg, out);
      out += f->kind == FoKind::And ? " & " : f->kind == FoKind::Or ? " | " : " => ";
      render_tptp(f->rhs, mg, out);
      out += ")";
      break;
    case FoKind::Forall:
    case FoKind::Exists:
      out += f->kind == FoKind::Forall ? "! [" : "? [";
      out += mg.get(f->var, true);
      out += "] : ";
      render_tptp(f->lhs, mg, out);
      break;
    default:
      throw std::invalid_argument("to_tptp: residual modal node");
  }
}

// Minimal well-formedness check: balanced delimiters and consistent functor
// arities, compared against the expected signature.
void validate_tptp(const std::string& text, const std::map<std::string, int>& expected) {
  std::vector<char> stack;
  for (char c : text) {
    if (c == '(' || c == '[') stack.push_back(c);
    if (c == ')' || c == ']') {
      if (stack.empty() || (c == ')' && stack.back() != '(') ||
          (c == ']' && stack.back() != '['))
        throw std::logic_error("tptp validator: unbalanced delimiters");
      stack.pop_back();
    }
  }
  if (!stack.empty()) throw std::logic_error("tptp validator: unbalanced delimiters");

  std::map<std::string, int> observed;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!std::islower(static_cast<unsigned char>(text[i]))) continue;
    std::size_t j = i;
    while (j < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
      ++j;
    std::string word = text.substr(i, j - i);
    int arity = 0;
    if (j < text.size() && text[j] == '(') {
      arity = 1;
      int depth = 0;
      for (std::size_t q = j; q < text.size(); ++q) {
        if (text[q] == '(') ++depth;
        else if (text[q] == ')') {
          if (--depth == 0) break;
        } else if (text[q] == ',' && depth == 1) ++arity;
      }
    }
    auto [it, fresh] = observed.emplace(word, arity);
    if (!fresh && it->second != arity)
      throw std::logic_error("tptp validator: functor " + word + " used at mixed arities");
    i = j - 1;
  }
  for (const auto& [name, arity] : expected) {
    auto it = observed.find(name);
    if (it != observed.end() && it->second != arity)
      throw std::logic_error("tptp validator: arity of " + name +
                             " disagrees with the signature");
  }
}

}  // namespace

TptpResult to_tptp(const FoPtr& f, const std::string& name) {
  if (fo_modal_depth(f) > 0)
    throw std::invalid_argument("to_tptp: formula contains modal operators");
  {
    std::function<void(const FoPtr&)> no_sharper = [&](const FoPtr& g) {
      if (g->kind == FoKind::Sharper)
        throw std::invalid_argument("to_tptp: formula contains a sharpening statement");
      if (g->lhs) no_sharper(g->lhs);
      if (g->rhs) no_sharper(g->rhs);
    };
    no_sharper(f);
  }
  if (!free_variables(f).empty())
    throw std::invalid_argument("to_tptp: formula must be closed");

  Mangler mg;
  std::string body;
  render_tptp(f, mg, body);

  std::string unit_name = mangle_word(name.empty() ? "f0" : name, false);
  std::string text = "fof(" + unit_name + ", axiom, " + body + ").";

  FoSignature sig = collect_fo_signature(f);
  std::map<std::string, int> expected;
  for (const auto& [p, arity] : sig.predicates) {
    auto it = mg.table.find(p);
    if (it != mg.table.end()) expected[it->second] = arity;
  }
  validate_tptp(text, expected);

  TptpResult out;
  out.text = text + "\n";
  for (const auto& [orig, mangled] : mg.table) out.name_map.emplace_back(mangled, orig);
  return out;
}

}  // namespace spl
