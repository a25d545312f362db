#include "spl/translate.hpp"

#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace spl {

// ---- PropFormula -------------------------------------------------------------

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

PropPtr make_prop(PKind k, bool value, PropAtom atom, PropPtr l, PropPtr r) {
  auto f = std::make_shared<PropFormula>();
  f->kind = k;
  f->value = value;
  f->atom = std::move(atom);
  f->lhs = std::move(l);
  f->rhs = std::move(r);
  std::size_t h = mix(0x7a, static_cast<std::size_t>(k));
  h = mix(h, value ? 1 : 0);
  h = mix(h, static_cast<std::size_t>(f->atom.kind));
  h = mix(h, std::hash<std::string>{}(f->atom.name));
  h = mix(h, static_cast<std::size_t>(f->atom.pi));
  if (f->lhs) h = mix(h, f->lhs->hash);
  if (f->rhs) h = mix(h, f->rhs->hash);
  f->hash = h;
  return f;
}

}  // namespace

PropPtr PropFormula::constant(bool v) {
  return make_prop(PKind::Const, v, {}, nullptr, nullptr);
}
PropPtr PropFormula::lit(PropAtom a) {
  return make_prop(PKind::Lit, false, std::move(a), nullptr, nullptr);
}
PropPtr PropFormula::neg(PropPtr f) {
  return make_prop(PKind::Not, false, {}, std::move(f), nullptr);
}
PropPtr PropFormula::land(PropPtr a, PropPtr b) {
  return make_prop(PKind::And, false, {}, std::move(a), std::move(b));
}
PropPtr PropFormula::lor(PropPtr a, PropPtr b) {
  return make_prop(PKind::Or, false, {}, std::move(a), std::move(b));
}
PropPtr PropFormula::implies(PropPtr a, PropPtr b) {
  return make_prop(PKind::Implies, false, {}, std::move(a), std::move(b));
}

bool prop_equal(const PropPtr& a, const PropPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->hash != b->hash || a->kind != b->kind) return false;
  switch (a->kind) {
    case PKind::Const: return a->value == b->value;
    case PKind::Lit: return a->atom == b->atom;
    case PKind::Not: return prop_equal(a->lhs, b->lhs);
    default: return prop_equal(a->lhs, b->lhs) && prop_equal(a->rhs, b->rhs);
  }
}

std::vector<PropAtom> Vocabulary::all() const {
  std::vector<PropAtom> out;
  for (int i = 0; i < static_cast<int>(pi_labels.size()); ++i) {
    for (const auto& p : atoms) out.push_back({PropAtomKind::AtomAt, p, i});
    for (const auto& s : standpoints) out.push_back({PropAtomKind::StandAt, s, i});
    out.push_back({PropAtomKind::StarAt, "", i});
  }
  return out;
}

// ---- translation -------------------------------------------------------------

PropPtr trans_expr(int pi, const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Star: return PropFormula::lit({PropAtomKind::StarAt, "", pi});
    case ExprKind::Named: return PropFormula::lit({PropAtomKind::StandAt, e->name, pi});
    case ExprKind::Union:
      return PropFormula::lor(trans_expr(pi, e->left), trans_expr(pi, e->right));
    case ExprKind::Inter:
      return PropFormula::land(trans_expr(pi, e->left), trans_expr(pi, e->right));
    case ExprKind::Diff:
      return PropFormula::land(trans_expr(pi, e->left),
                               PropFormula::neg(trans_expr(pi, e->right)));
  }
  throw std::logic_error("unreachable");
}

namespace {

struct PropPtrHash {
  std::size_t operator()(const PropPtr& f) const { return f ? f->hash : 0; }
};
struct PropPtrEq {
  bool operator()(const PropPtr& a, const PropPtr& b) const { return prop_equal(a, b); }
};

// Left fold skipping structural duplicates.
PropPtr fold(const std::vector<PropPtr>& parts, bool conjunction) {
  std::unordered_set<PropPtr, PropPtrHash, PropPtrEq> seen;
  PropPtr acc;
  for (const auto& p : parts) {
    if (!seen.insert(p).second) continue;
    if (!acc) acc = p;
    else acc = conjunction ? PropFormula::land(acc, p) : PropFormula::lor(acc, p);
  }
  if (!acc) acc = PropFormula::constant(conjunction);
  return acc;
}

std::vector<std::string> fresh_pi_labels(std::size_t count, const SymbolSet& taken) {
  std::set<std::string> used(taken.atoms.begin(), taken.atoms.end());
  used.insert(taken.standpoints.begin(), taken.standpoints.end());
  std::string prefix = "pi";
  for (;;) {
    bool clash = false;
    for (std::size_t i = 1; i <= count; ++i)
      if (used.count(prefix + std::to_string(i))) { clash = true; break; }
    if (!clash) break;
    prefix += "_";
  }
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

struct Translator {
  int n;
  std::unordered_map<FormulaPtr, PropPtr, FormulaHash, FormulaEq> pi_independent;

  PropPtr trans(int pi, const FormulaPtr& f) {
    switch (f->kind) {
      case FKind::True: return PropFormula::constant(true);
      case FKind::False: return PropFormula::constant(false);
      case FKind::Atom: return PropFormula::lit({PropAtomKind::AtomAt, f->name, pi});
      case FKind::Not: return PropFormula::neg(trans(pi, f->lhs));
      case FKind::And: return PropFormula::land(trans(pi, f->lhs), trans(pi, f->rhs));
      case FKind::Or: return PropFormula::lor(trans(pi, f->lhs), trans(pi, f->rhs));
      case FKind::Implies:
        return PropFormula::implies(trans(pi, f->lhs), trans(pi, f->rhs));
      case FKind::Box:
      case FKind::Diamond:
      case FKind::Sharper: {
        auto it = pi_independent.find(f);
        if (it != pi_independent.end()) return it->second;
        std::vector<PropPtr> parts;
        parts.reserve(n);
        for (int q = 0; q < n; ++q) {
          if (f->kind == FKind::Box)
            parts.push_back(PropFormula::implies(trans_expr(q, f->expr), trans(q, f->lhs)));
          else if (f->kind == FKind::Diamond)
            parts.push_back(PropFormula::land(trans_expr(q, f->expr), trans(q, f->lhs)));
          else
            parts.push_back(PropFormula::implies(trans_expr(q, f->expr),
                                                 trans_expr(q, f->expr2)));
        }
        PropPtr out = fold(parts, f->kind != FKind::Diamond);
        pi_independent.emplace(f, out);
        return out;
      }
    }
    throw std::logic_error("unreachable");
  }
};

}  // namespace

Translation translate_formula(const FormulaPtr& f, std::size_t n) {
  if (n < 1) throw std::invalid_argument("precisification count must be at least 1");
  SymbolSet syms = collect_symbols(f);
  Translation out;
  out.vocab.pi_labels = fresh_pi_labels(n, syms);
  out.vocab.atoms = syms.atoms;
  out.vocab.standpoints = syms.standpoints;

  Translator tr{static_cast<int>(n), {}};
  std::vector<PropPtr> parts;
  for (int i = 0; i < static_cast<int>(n); ++i) parts.push_back(tr.trans(i, f));
  for (int i = 0; i < static_cast<int>(n); ++i)
    parts.push_back(PropFormula::lit({PropAtomKind::StarAt, "", i}));
  out.formula = fold(parts, true);
  return out;
}

// ---- model correspondences ------------------------------------------------------

Structure extract_model(const Valuation& v, const Vocabulary& vocab) {
  for (int i = 0; i < static_cast<int>(vocab.n()); ++i) {
    auto it = v.values.find({PropAtomKind::StarAt, "", i});
    if (it != v.values.end() && !it->second)
      throw std::invalid_argument("star atom *@" + vocab.pi_labels[i] +
                                  " is false; not a translation model");
  }
  std::map<std::string, std::vector<std::string>> sigma, delta;
  for (const auto& p : vocab.atoms) {
    std::vector<std::string> members;
    for (int i = 0; i < static_cast<int>(vocab.n()); ++i)
      if (v.at({PropAtomKind::AtomAt, p, i})) members.push_back(vocab.pi_labels[i]);
    delta[p] = members;
  }
  for (const auto& s : vocab.standpoints) {
    std::vector<std::string> members;
    for (int i = 0; i < static_cast<int>(vocab.n()); ++i)
      if (v.at({PropAtomKind::StandAt, s, i})) members.push_back(vocab.pi_labels[i]);
    sigma[s] = members;
  }
  return Structure::make(vocab.pi_labels, sigma, delta);
}

Valuation encode_model(const Structure& m, const Vocabulary& vocab) {
  if (m.precisifications() != vocab.pi_labels)
    throw std::invalid_argument("structure precisification set does not match the "
                                "translation's");
  Valuation v;
  for (int i = 0; i < static_cast<int>(vocab.n()); ++i) {
    for (const auto& p : vocab.atoms)
      v.values[{PropAtomKind::AtomAt, p, i}] = m.delta_mask(p)[i];
    for (const auto& s : vocab.standpoints)
      v.values[{PropAtomKind::StandAt, s, i}] = m.sigma_mask(s)[i];
    v.values[{PropAtomKind::StarAt, "", i}] = true;
  }
  return v;
}

bool prop_eval(const PropPtr& f, const Valuation& v) {
  switch (f->kind) {
    case PKind::Const: return f->value;
    case PKind::Lit: return v.at(f->atom);
    case PKind::Not: return !prop_eval(f->lhs, v);
    case PKind::And: return prop_eval(f->lhs, v) && prop_eval(f->rhs, v);
    case PKind::Or: return prop_eval(f->lhs, v) || prop_eval(f->rhs, v);
    case PKind::Implies: return !prop_eval(f->lhs, v) || prop_eval(f->rhs, v);
  }
  throw std::logic_error("unreachable");
}

// ---- rendering and metrics -------------------------------------------------------

std::string prop_atom_name(const PropAtom& a, const Vocabulary& vocab) {
  const std::string& pi = vocab.pi_labels.at(a.pi);
  switch (a.kind) {
    case PropAtomKind::AtomAt: return a.name + "@" + pi;
    case PropAtomKind::StandAt: return a.name + "@" + pi;
    case PropAtomKind::StarAt: return "*@" + pi;
  }
  throw std::logic_error("unreachable");
}

namespace {

// precedence: -> < | < & < ~ < atom
void print_p(const PropPtr& f, const Vocabulary& vocab, int min_prec, std::string& out) {
  int prec;
  switch (f->kind) {
    case PKind::Implies: prec = 1; break;
    case PKind::Or: prec = 2; break;
    case PKind::And: prec = 3; break;
    case PKind::Not: prec = 4; break;
    default: prec = 5;
  }
  bool parens = prec < min_prec;
  if (parens) out += "(";
  switch (f->kind) {
    case PKind::Const: out += f->value ? "true" : "false"; break;
    case PKind::Lit: out += prop_atom_name(f->atom, vocab); break;
    case PKind::Not:
      out += "~";
      print_p(f->lhs, vocab, 4, out);
      break;
    case PKind::And:
      print_p(f->lhs, vocab, 3, out);
      out += " & ";
      print_p(f->rhs, vocab, 4, out);
      break;
    case PKind::Or:
      print_p(f->lhs, vocab, 2, out);
      out += " | ";
      print_p(f->rhs, vocab, 3, out);
      break;
    case PKind::Implies:
      print_p(f->lhs, vocab, 2, out);
      out += " -> ";
      print_p(f->rhs, vocab, 1, out);
      break;
  }
  if (parens) out += ")";
}

}  // namespace

std::string print_prop(const PropPtr& f, const Vocabulary& vocab) {
  std::string out;
  print_p(f, vocab, 1, out);
  return out;
}

std::size_t prop_node_count(const PropPtr& f) {
  std::unordered_map<const PropFormula*, std::size_t> memo;
  auto count = [&](auto&& self, const PropPtr& g) -> std::size_t {
    auto it = memo.find(g.get());
    if (it != memo.end()) return it->second;
    std::size_t c = 1;
    if (g->lhs) c += self(self, g->lhs);
    if (g->rhs) c += self(self, g->rhs);
    memo.emplace(g.get(), c);
    return c;
  };
  return count(count, f);
}

std::size_t precisification_hint(const FormulaPtr& f) {
  SymbolSet syms = collect_symbols(f);
  SubformulaIndex idx(f);
  std::size_t diamonds = 0;
  for (const auto& sub : idx.entries())
    if (sub->kind == FKind::Diamond) ++diamonds;
  return syms.standpoints.size() + diamonds;
}

}  // namespace spl
