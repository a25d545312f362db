#include "spl/frontend.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "lexer.hpp"

namespace spl {

using detail::Cursor;
using detail::Tok;

// ---- parser -----------------------------------------------------------------

namespace {

ExprPtr parse_sexpr(Cursor& cur);

ExprPtr parse_sleaf(Cursor& cur) {
  if (cur.accept(Tok::Star)) return StandpointExpr::star();
  if (cur.at(Tok::Ident)) return StandpointExpr::named(cur.next().text);
  if (cur.accept(Tok::LParen)) {
    auto e = parse_sexpr(cur);
    cur.expect(Tok::RParen, "to close standpoint expression");
    return e;
  }
  throw ParseError(std::string("expected standpoint expression, found ") +
                       detail::tok_name(cur.peek().kind),
                   cur.peek().span);
}

ExprPtr parse_sinter(Cursor& cur) {
  auto e = parse_sleaf(cur);
  while (cur.accept(Tok::KwN)) e = StandpointExpr::inter_of(e, parse_sleaf(cur));
  return e;
}

ExprPtr parse_sunion(Cursor& cur) {
  auto e = parse_sinter(cur);
  while (cur.accept(Tok::KwU)) e = StandpointExpr::union_of(e, parse_sinter(cur));
  return e;
}

ExprPtr parse_sexpr(Cursor& cur) {
  auto e = parse_sunion(cur);
  while (cur.accept(Tok::Backslash)) e = StandpointExpr::diff_of(e, parse_sunion(cur));
  return e;
}

FormulaPtr parse_iff(Cursor& cur);

FormulaPtr parse_atom(Cursor& cur) {
  if (cur.accept(Tok::True)) return Formula::tru();
  if (cur.accept(Tok::False)) return Formula::fls();
  if (cur.at(Tok::Ident)) return Formula::atom(cur.next().text);
  if (cur.at(Tok::LParen)) {
    std::size_t mark = cur.save();
    cur.next();
    // A parenthesis opens either a sharpening statement or a subformula.
    try {
      auto e1 = parse_sexpr(cur);
      if (cur.accept(Tok::SharpLe)) {
        auto e2 = parse_sexpr(cur);
        cur.expect(Tok::RParen, "to close sharpening statement");
        return Formula::sharper(e1, e2);
      }
    } catch (const ParseError&) {
      // fall through to the formula interpretation
    }
    cur.restore(mark);
    cur.next();
    auto f = parse_iff(cur);
    cur.expect(Tok::RParen, "to close subformula");
    return f;
  }
  throw ParseError(std::string("expected formula, found ") +
                       detail::tok_name(cur.peek().kind),
                   cur.peek().span);
}

FormulaPtr parse_unary(Cursor& cur) {
  if (cur.accept(Tok::Tilde)) return Formula::neg(parse_unary(cur));
  if (cur.accept(Tok::LBrack)) {
    auto e = parse_sexpr(cur);
    cur.expect(Tok::RBrack, "to close box label");
    return Formula::box(e, parse_unary(cur));
  }
  if (cur.accept(Tok::Langle)) {
    auto e = parse_sexpr(cur);
    cur.expect(Tok::Rangle, "to close diamond label");
    return Formula::diamond(e, parse_unary(cur));
  }
  return parse_atom(cur);
}

FormulaPtr parse_and(Cursor& cur) {
  auto f = parse_unary(cur);
  while (cur.accept(Tok::Amp)) f = Formula::land(f, parse_unary(cur));
  return f;
}

FormulaPtr parse_or(Cursor& cur) {
  auto f = parse_and(cur);
  while (cur.accept(Tok::Pipe)) f = Formula::lor(f, parse_and(cur));
  return f;
}

FormulaPtr parse_impl(Cursor& cur) {
  std::vector<FormulaPtr> parts{parse_or(cur)};
  while (cur.accept(Tok::Arrow)) parts.push_back(parse_or(cur));
  auto f = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it)
    f = Formula::implies(*it, f);
  return f;
}

FormulaPtr parse_iff(Cursor& cur) {
  auto f = parse_impl(cur);
  while (cur.accept(Tok::DArrow)) {
    auto g = parse_impl(cur);
    f = Formula::land(Formula::implies(f, g), Formula::implies(g, f));
  }
  return f;
}

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
  Cursor cur(detail::lex(text));
  auto f = parse_iff(cur);
  cur.expect(Tok::End, "after formula");
  SymbolSet syms = collect_symbols(f);
  for (const auto& a : syms.atoms)
    if (std::binary_search(syms.standpoints.begin(), syms.standpoints.end(), a))
      throw ParseError("name " + a + " used as both atom and standpoint",
                       {0, text.size()});
  return f;
}

// ---- printer ----------------------------------------------------------------

namespace {

// sexpr precedence: diff < union < inter < leaf
void print_sexpr(const ExprPtr& e, int min_prec, std::string& out) {
  int prec;
  switch (e->kind) {
    case ExprKind::Star:
    case ExprKind::Named: prec = 4; break;
    case ExprKind::Inter: prec = 3; break;
    case ExprKind::Union: prec = 2; break;
    case ExprKind::Diff: prec = 1; break;
    default: prec = 4;
  }
  bool parens = prec < min_prec;
  if (parens) out += "(";
  switch (e->kind) {
    case ExprKind::Star: out += "*"; break;
    case ExprKind::Named: out += e->name; break;
    case ExprKind::Inter:
      print_sexpr(e->left, 3, out);
      out += " n ";
      print_sexpr(e->right, 4, out);
      break;
    case ExprKind::Union:
      print_sexpr(e->left, 2, out);
      out += " u ";
      print_sexpr(e->right, 3, out);
      break;
    case ExprKind::Diff:
      print_sexpr(e->left, 1, out);
      out += " \\ ";
      print_sexpr(e->right, 2, out);
      break;
  }
  if (parens) out += ")";
}

// formula precedence: -> < | < & < unary < atom
void print_f(const FormulaPtr& f, int min_prec, std::string& out) {
  int prec;
  switch (f->kind) {
    case FKind::Implies: prec = 1; break;
    case FKind::Or: prec = 2; break;
    case FKind::And: prec = 3; break;
    case FKind::Not:
    case FKind::Box:
    case FKind::Diamond: prec = 4; break;
    default: prec = 5;
  }
  bool parens = prec < min_prec;
  if (parens) out += "(";
  switch (f->kind) {
    case FKind::True: out += "true"; break;
    case FKind::False: out += "false"; break;
    case FKind::Atom: out += f->name; break;
    case FKind::Sharper:
      out += "(";
      print_sexpr(f->expr, 1, out);
      out += " <= ";
      print_sexpr(f->expr2, 1, out);
      out += ")";
      break;
    case FKind::Not:
      out += "~";
      print_f(f->lhs, 4, out);
      break;
    case FKind::Box:
      out += "[";
      print_sexpr(f->expr, 1, out);
      out += "] ";
      print_f(f->lhs, 4, out);
      break;
    case FKind::Diamond:
      out += "<";
      print_sexpr(f->expr, 1, out);
      out += "> ";
      print_f(f->lhs, 4, out);
      break;
    case FKind::And:
      print_f(f->lhs, 3, out);
      out += " & ";
      print_f(f->rhs, 4, out);
      break;
    case FKind::Or:
      print_f(f->lhs, 2, out);
      out += " | ";
      print_f(f->rhs, 3, out);
      break;
    case FKind::Implies:
      print_f(f->lhs, 2, out);
      out += " -> ";
      print_f(f->rhs, 1, out);
      break;
  }
  if (parens) out += ")";
}

}  // namespace

std::string print_formula(const FormulaPtr& f) {
  std::string out;
  print_f(f, 1, out);
  return out;
}

std::string print_expr(const ExprPtr& e) {
  std::string out;
  print_sexpr(e, 1, out);
  return out;
}

// ---- structure JSON -----------------------------------------------------------

Structure parse_structure(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("JSON syntax error: ") + e.what(), {e.byte, e.byte});
  }
  if (!j.is_object())
    throw ParseError("structure must be a JSON object", {0, text.size()});
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "precisifications" && key != "sigma" && key != "delta")
      throw ParseError("unknown structure field \"" + key + "\"", {0, text.size()});
  }
  if (!j.contains("precisifications") || !j["precisifications"].is_array())
    throw ParseError("structure needs a \"precisifications\" array", {0, text.size()});

  auto string_list = [&](const nlohmann::json& arr, const std::string& what) {
    std::vector<std::string> out;
    for (const auto& v : arr) {
      if (!v.is_string())
        throw ParseError(what + " entries must be strings", {0, text.size()});
      out.push_back(v.get<std::string>());
    }
    return out;
  };

  std::vector<std::string> pis = string_list(j["precisifications"], "precisification");
  std::map<std::string, std::vector<std::string>> sigma, delta;
  if (j.contains("sigma")) {
    if (!j["sigma"].is_object())
      throw ParseError("\"sigma\" must be an object", {0, text.size()});
    for (const auto& [k, v] : j["sigma"].items())
      sigma[k] = string_list(v, "sigma member");
  }
  if (j.contains("delta")) {
    if (!j["delta"].is_object())
      throw ParseError("\"delta\" must be an object", {0, text.size()});
    for (const auto& [k, v] : j["delta"].items())
      delta[k] = string_list(v, "delta member");
  }
  return Structure::make(std::move(pis), sigma, delta);
}

std::string print_structure(const Structure& m, int indent) {
  nlohmann::ordered_json j;
  j["precisifications"] = m.precisifications();
  nlohmann::ordered_json sig = nlohmann::ordered_json::object();
  for (const auto& [s, mask] : m.sigma()) {
    (void)mask;
    sig[s] = m.sigma_labels(s);
  }
  nlohmann::ordered_json del = nlohmann::ordered_json::object();
  for (const auto& [p, mask] : m.delta()) {
    (void)mask;
    del[p] = m.delta_labels(p);
  }
  j["sigma"] = sig;
  j["delta"] = del;
  return j.dump(indent);
}

}  // namespace spl
