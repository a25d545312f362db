#include "spl/fosl.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "lexer.hpp"
#include "spl/ssnf.hpp"

namespace spl {

// ---- construction ------------------------------------------------------------

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

FoPtr make_fo(FoKind k, std::string pred, std::vector<Term> args, std::string var,
              FoPtr l, FoPtr r, ExprPtr e, ExprPtr e2) {
  auto f = std::make_shared<FoFormula>();
  f->kind = k;
  f->pred = std::move(pred);
  f->args = std::move(args);
  f->var = std::move(var);
  f->lhs = std::move(l);
  f->rhs = std::move(r);
  f->expr = std::move(e);
  f->expr2 = std::move(e2);
  std::size_t h = mix(0x2b, static_cast<std::size_t>(k));
  h = mix(h, std::hash<std::string>{}(f->pred));
  h = mix(h, std::hash<std::string>{}(f->var));
  for (const auto& t : f->args) {
    h = mix(h, static_cast<std::size_t>(t.kind));
    h = mix(h, std::hash<std::string>{}(t.name));
  }
  if (f->lhs) h = mix(h, f->lhs->hash);
  if (f->rhs) h = mix(h, f->rhs->hash);
  if (f->expr) h = mix(h, f->expr->hash);
  if (f->expr2) h = mix(h, f->expr2->hash);
  f->hash = h;
  return f;
}

}  // namespace

FoPtr FoFormula::tru() {
  static const FoPtr i = make_fo(FoKind::True, "", {}, "", nullptr, nullptr, nullptr, nullptr);
  return i;
}
FoPtr FoFormula::fls() {
  static const FoPtr i = make_fo(FoKind::False, "", {}, "", nullptr, nullptr, nullptr, nullptr);
  return i;
}
FoPtr FoFormula::pred_of(std::string name, std::vector<Term> args) {
  if (name.empty()) throw std::invalid_argument("predicate name must be non-empty");
  return make_fo(FoKind::Pred, std::move(name), std::move(args), "", nullptr, nullptr,
                 nullptr, nullptr);
}
FoPtr FoFormula::neg(FoPtr f) {
  return make_fo(FoKind::Not, "", {}, "", std::move(f), nullptr, nullptr, nullptr);
}
FoPtr FoFormula::land(FoPtr a, FoPtr b) {
  return make_fo(FoKind::And, "", {}, "", std::move(a), std::move(b), nullptr, nullptr);
}
FoPtr FoFormula::lor(FoPtr a, FoPtr b) {
  return make_fo(FoKind::Or, "", {}, "", std::move(a), std::move(b), nullptr, nullptr);
}
FoPtr FoFormula::implies(FoPtr a, FoPtr b) {
  return make_fo(FoKind::Implies, "", {}, "", std::move(a), std::move(b), nullptr, nullptr);
}
FoPtr FoFormula::forall(std::string v, FoPtr body) {
  return make_fo(FoKind::Forall, "", {}, std::move(v), std::move(body), nullptr, nullptr,
                 nullptr);
}
FoPtr FoFormula::exists(std::string v, FoPtr body) {
  return make_fo(FoKind::Exists, "", {}, std::move(v), std::move(body), nullptr, nullptr,
                 nullptr);
}
FoPtr FoFormula::box(ExprPtr e, FoPtr body) {
  return make_fo(FoKind::Box, "", {}, "", std::move(body), nullptr, std::move(e), nullptr);
}
FoPtr FoFormula::diamond(ExprPtr e, FoPtr body) {
  return make_fo(FoKind::Diamond, "", {}, "", std::move(body), nullptr, std::move(e),
                 nullptr);
}
FoPtr FoFormula::sharper(ExprPtr a, ExprPtr b) {
  return make_fo(FoKind::Sharper, "", {}, "", nullptr, nullptr, std::move(a), std::move(b));
}

bool fo_equal(const FoPtr& a, const FoPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->hash != b->hash || a->kind != b->kind) return false;
  switch (a->kind) {
    case FoKind::True:
    case FoKind::False: return true;
    case FoKind::Pred: return a->pred == b->pred && a->args == b->args;
    case FoKind::Not: return fo_equal(a->lhs, b->lhs);
    case FoKind::And:
    case FoKind::Or:
    case FoKind::Implies: return fo_equal(a->lhs, b->lhs) && fo_equal(a->rhs, b->rhs);
    case FoKind::Forall:
    case FoKind::Exists: return a->var == b->var && fo_equal(a->lhs, b->lhs);
    case FoKind::Box:
    case FoKind::Diamond: return expr_equal(a->expr, b->expr) && fo_equal(a->lhs, b->lhs);
    case FoKind::Sharper:
      return expr_equal(a->expr, b->expr) && expr_equal(a->expr2, b->expr2);
  }
  return false;
}

// ---- analysis ---------------------------------------------------------------

static void free_vars_into(const FoPtr& f, std::set<std::string>& bound,
                           std::set<std::string>& out) {
  switch (f->kind) {
    case FoKind::Pred:
      for (const auto& t : f->args)
        if (t.kind == TermKind::Var && !bound.count(t.name)) out.insert(t.name);
      return;
    case FoKind::Forall:
    case FoKind::Exists: {
      bool fresh = bound.insert(f->var).second;
      free_vars_into(f->lhs, bound, out);
      if (fresh) bound.erase(f->var);
      return;
    }
    default:
      if (f->lhs) free_vars_into(f->lhs, bound, out);
      if (f->rhs) free_vars_into(f->rhs, bound, out);
      return;
  }
}

std::set<std::string> free_variables(const FoPtr& f) {
  std::set<std::string> bound, out;
  free_vars_into(f, bound, out);
  return out;
}

std::size_t fo_size(const FoPtr& f) {
  std::unordered_set<FoPtr, FoHash, FoEq> seen;
  std::function<void(const FoPtr&)> go = [&](const FoPtr& g) {
    if (!seen.insert(g).second) return;
    if (g->lhs) go(g->lhs);
    if (g->rhs) go(g->rhs);
  };
  go(f);
  return seen.size();
}

std::size_t fo_modal_depth(const FoPtr& f) {
  switch (f->kind) {
    case FoKind::Pred:
    case FoKind::True:
    case FoKind::False:
    case FoKind::Sharper: return 0;
    case FoKind::Not:
    case FoKind::Forall:
    case FoKind::Exists: return fo_modal_depth(f->lhs);
    case FoKind::And:
    case FoKind::Or:
    case FoKind::Implies:
      return std::max(fo_modal_depth(f->lhs), fo_modal_depth(f->rhs));
    case FoKind::Box:
    case FoKind::Diamond: return 1 + fo_modal_depth(f->lhs);
  }
  throw std::logic_error("unreachable");
}

FoSignature collect_fo_signature(const FoPtr& f) {
  FoSignature sig;
  std::function<void(const FoPtr&)> go = [&](const FoPtr& g) {
    if (g->kind == FoKind::Pred) {
      auto [it, fresh] = sig.predicates.emplace(g->pred, static_cast<int>(g->args.size()));
      if (!fresh && it->second != static_cast<int>(g->args.size()))
        throw std::invalid_argument("predicate " + g->pred + " used with arities " +
                                    std::to_string(it->second) + " and " +
                                    std::to_string(g->args.size()));
      for (const auto& t : g->args)
        if (t.kind == TermKind::Const) sig.constants.insert(t.name);
    }
    if (g->lhs) go(g->lhs);
    if (g->rhs) go(g->rhs);
  };
  go(f);
  return sig;
}

SententialVerdict is_sentential(const FoPtr& f) {
  SententialVerdict verdict;
  std::function<bool(const FoPtr&)> go = [&](const FoPtr& g) -> bool {
    if (g->kind == FoKind::Box || g->kind == FoKind::Diamond) {
      auto fv = free_variables(g->lhs);
      if (!fv.empty()) {
        verdict.sentential = false;
        verdict.offender = g;
        verdict.free_vars.assign(fv.begin(), fv.end());
        return false;
      }
    }
    if (g->lhs && !go(g->lhs)) return false;
    if (g->rhs && !go(g->rhs)) return false;
    return true;
  };
  go(f);
  return verdict;
}

// ---- fo_ssnf ------------------------------------------------------------------

namespace {

bool fo_literal_leaf(const FoPtr& f) {
  switch (f->kind) {
    case FoKind::Pred:
    case FoKind::True:
    case FoKind::False:
    case FoKind::Sharper: return true;
    default: return false;
  }
}

std::uint64_t fnv64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct FoSsnfBuilder {
  std::set<std::string> taken;
  std::unordered_map<FoPtr, FoPtr, FoHash, FoEq> labels;
  std::vector<FoPtr> defs;
  std::set<std::pair<const FoFormula*, bool>> emitted;

  FoPtr label(const FoPtr& f) {
    if (fo_literal_leaf(f)) return f;
    if (f->kind == FoKind::Not) return FoFormula::neg(label(f->lhs));
    auto it = labels.find(f);
    if (it != labels.end()) return it->second;
    char buf[20];
    std::snprintf(buf, sizeof buf, "%010llx",
                  static_cast<unsigned long long>(fnv64(print_fo_formula(f)) &
                                                  0xffffffffffULL));
    std::string name = std::string(ssnf_label_prefix()) + buf;
    while (taken.count(name)) name += "x";
    taken.insert(name);
    std::vector<Term> args;
    for (const auto& x : free_variables(f)) args.push_back(var(x));
    auto lab = FoFormula::pred_of(name, args);
    labels.emplace(f, lab);
    return lab;
  }

  void emit(const FoPtr& f, bool positive, FoPtr body) {
    FoPtr def = positive ? FoFormula::implies(label(f), std::move(body))
                         : FoFormula::implies(std::move(body), label(f));
    // Definitions are universally closed over their free variables.
    auto fv = free_variables(def);
    for (auto it = fv.rbegin(); it != fv.rend(); ++it)
      def = FoFormula::forall(*it, def);
    defs.push_back(def);
  }

  void walk(const FoPtr& f, bool positive) {
    if (fo_literal_leaf(f)) return;
    if (f->kind == FoKind::Not) {
      walk(f->lhs, !positive);
      return;
    }
    if (!emitted.insert({f.get(), positive}).second) return;
    switch (f->kind) {
      case FoKind::And:
        emit(f, positive, FoFormula::land(label(f->lhs), label(f->rhs)));
        walk(f->lhs, positive);
        walk(f->rhs, positive);
        break;
      case FoKind::Or:
        emit(f, positive, FoFormula::lor(label(f->lhs), label(f->rhs)));
        walk(f->lhs, positive);
        walk(f->rhs, positive);
        break;
      case FoKind::Implies:
        emit(f, positive, FoFormula::implies(label(f->lhs), label(f->rhs)));
        walk(f->lhs, !positive);
        walk(f->rhs, positive);
        break;
      case FoKind::Forall:
        emit(f, positive, FoFormula::forall(f->var, label(f->lhs)));
        walk(f->lhs, positive);
        break;
      case FoKind::Exists:
        emit(f, positive, FoFormula::exists(f->var, label(f->lhs)));
        walk(f->lhs, positive);
        break;
      case FoKind::Box:
        emit(f, positive, FoFormula::box(f->expr, label(f->lhs)));
        walk(f->lhs, positive);
        break;
      case FoKind::Diamond:
        emit(f, positive, FoFormula::diamond(f->expr, label(f->lhs)));
        walk(f->lhs, positive);
        break;
      default: throw std::logic_error("unreachable");
    }
  }
};

}  // namespace

FoPtr fo_ssnf(const FoPtr& f) {
  auto verdict = is_sentential(f);
  if (!verdict.sentential)
    throw std::invalid_argument("fo_ssnf requires a sentential formula; offending "
                                "modal subformula has free variables");
  FoSsnfBuilder b;
  FoSignature sig = collect_fo_signature(f);
  for (const auto& [p, arity] : sig.predicates) {
    (void)arity;
    b.taken.insert(p);
  }
  b.taken.insert(sig.constants.begin(), sig.constants.end());

  FoPtr root_label = b.label(f);
  b.walk(f, true);
  FoPtr acc = root_label;
  for (const auto& d : b.defs) acc = FoFormula::land(acc, d);
  return acc;
}

// ---- FoStructure ----------------------------------------------------------------

FoStructure FoStructure::make(std::vector<std::string> domain,
                              std::vector<std::string> precisifications,
                              const std::map<std::string, std::vector<std::string>>& sigma,
                              std::vector<FoInterpretation> gamma) {
  if (domain.empty()) throw std::invalid_argument("domain must be non-empty");
  if (precisifications.empty())
    throw std::invalid_argument("precisification set must be non-empty");
  if (gamma.size() != precisifications.size())
    throw std::invalid_argument("gamma must interpret every precisification");

  FoStructure m;
  m.domain_ = std::move(domain);
  m.pis_ = std::move(precisifications);
  m.gamma_ = std::move(gamma);

  std::map<std::string, int> where;
  for (std::size_t i = 0; i < m.pis_.size(); ++i)
    if (!where.emplace(m.pis_[i], static_cast<int>(i)).second)
      throw std::invalid_argument("duplicate precisification name " + m.pis_[i]);

  for (const auto& [s, members] : sigma) {
    if (s == "*") throw std::invalid_argument("'*' must not appear as a sigma key");
    std::vector<bool> mask(m.pis_.size(), false);
    for (const auto& p : members) {
      auto it = where.find(p);
      if (it == where.end()) throw std::invalid_argument("unknown precisification " + p);
      mask[it->second] = true;
    }
    m.sigma_.emplace(s, mask);
  }

  const int dn = static_cast<int>(m.domain_.size());
  std::map<std::string, int> arity;
  for (const auto& interp : m.gamma_) {
    for (const auto& [p, rel] : interp.predicates) {
      for (const auto& tuple : rel) {
        auto [it, fresh] = arity.emplace(p, static_cast<int>(tuple.size()));
        if (!fresh && it->second != static_cast<int>(tuple.size()))
          throw std::invalid_argument("predicate " + p + " interpreted at mixed arities");
        for (int el : tuple)
          if (el < 0 || el >= dn)
            throw std::invalid_argument("tuple element out of domain in " + p);
      }
    }
    for (const auto& [c, el] : interp.constants)
      if (el < 0 || el >= dn)
        throw std::invalid_argument("constant " + c + " out of domain");
  }
  // Rigid constants: every precisification interprets the same constants the
  // same way.
  const auto& first = m.gamma_.front().constants;
  for (const auto& interp : m.gamma_)
    if (interp.constants != first)
      throw std::invalid_argument("constants must be rigid across precisifications");
  return m;
}

int FoStructure::pi_index(const std::string& pi) const {
  auto it = std::find(pis_.begin(), pis_.end(), pi);
  return it == pis_.end() ? -1 : static_cast<int>(it - pis_.begin());
}

std::vector<bool> FoStructure::sigma_mask(const std::string& s) const {
  auto it = sigma_.find(s);
  if (it != sigma_.end()) return it->second;
  return std::vector<bool>(pis_.size(), false);
}

std::vector<bool> fo_sigma_eval(const FoStructure& m, const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Star: return std::vector<bool>(m.precisifications().size(), true);
    case ExprKind::Named: return m.sigma_mask(e->name);
    default: {
      auto a = fo_sigma_eval(m, e->left), b = fo_sigma_eval(m, e->right);
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (e->kind == ExprKind::Union) a[i] = a[i] || b[i];
        else if (e->kind == ExprKind::Inter) a[i] = a[i] && b[i];
        else a[i] = a[i] && !b[i];
      }
      return a;
    }
  }
}

// ---- evaluation -------------------------------------------------------------------

namespace {

int term_value(const FoInterpretation& interp, const VarAssignment& v, const Term& t) {
  if (t.kind == TermKind::Var) {
    auto it = v.find(t.name);
    if (it == v.end()) throw std::invalid_argument("unbound variable " + t.name);
    return it->second;
  }
  auto it = interp.constants.find(t.name);
  if (it == interp.constants.end())
    throw std::invalid_argument("constant " + t.name + " not interpreted");
  return it->second;
}

bool pred_holds(const FoInterpretation& interp, const VarAssignment& v, const FoPtr& f) {
  auto it = interp.predicates.find(f->pred);
  std::vector<int> tuple;
  tuple.reserve(f->args.size());
  for (const auto& t : f->args) tuple.push_back(term_value(interp, v, t));
  if (it == interp.predicates.end()) return false;  // uninterpreted: empty relation
  if (!it->second.empty() && it->second.begin()->size() != tuple.size())
    throw std::invalid_argument("arity mismatch for predicate " + f->pred);
  return it->second.count(tuple) > 0;
}

bool fo_eval_at(const FoStructure& m, std::size_t pi, const VarAssignment& v,
                const FoPtr& f) {
  switch (f->kind) {
    case FoKind::True: return true;
    case FoKind::False: return false;
    case FoKind::Pred: return pred_holds(m.gamma(pi), v, f);
    case FoKind::Not: return !fo_eval_at(m, pi, v, f->lhs);
    case FoKind::And: return fo_eval_at(m, pi, v, f->lhs) && fo_eval_at(m, pi, v, f->rhs);
    case FoKind::Or: return fo_eval_at(m, pi, v, f->lhs) || fo_eval_at(m, pi, v, f->rhs);
    case FoKind::Implies:
      return !fo_eval_at(m, pi, v, f->lhs) || fo_eval_at(m, pi, v, f->rhs);
    case FoKind::Forall: {
      VarAssignment v2 = v;
      for (int d = 0; d < static_cast<int>(m.domain().size()); ++d) {
        v2[f->var] = d;
        if (!fo_eval_at(m, pi, v2, f->lhs)) return false;
      }
      return true;
    }
    case FoKind::Exists: {
      VarAssignment v2 = v;
      for (int d = 0; d < static_cast<int>(m.domain().size()); ++d) {
        v2[f->var] = d;
        if (fo_eval_at(m, pi, v2, f->lhs)) return true;
      }
      return false;
    }
    case FoKind::Box: {
      auto mask = fo_sigma_eval(m, f->expr);
      for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i] && !fo_eval_at(m, i, v, f->lhs)) return false;
      return true;
    }
    case FoKind::Diamond: {
      auto mask = fo_sigma_eval(m, f->expr);
      for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i] && fo_eval_at(m, i, v, f->lhs)) return true;
      return false;
    }
    case FoKind::Sharper: {
      auto a = fo_sigma_eval(m, f->expr), b = fo_sigma_eval(m, f->expr2);
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && !b[i]) return false;
      return true;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

bool fo_eval(const FoStructure& m, const std::string& pi, const VarAssignment& v,
             const FoPtr& f) {
  int i = m.pi_index(pi);
  if (i < 0) throw std::domain_error("precisification " + pi + " not in Pi");
  return fo_eval_at(m, static_cast<std::size_t>(i), v, f);
}

bool fo_eval_global(const FoStructure& m, const FoPtr& f) {
  std::vector<std::string> fv;
  for (const auto& x : free_variables(f)) fv.push_back(x);
  const int dn = static_cast<int>(m.domain().size());
  std::vector<int> choice(fv.size(), 0);
  for (;;) {
    VarAssignment v;
    for (std::size_t i = 0; i < fv.size(); ++i) v[fv[i]] = choice[i];
    for (std::size_t pi = 0; pi < m.precisifications().size(); ++pi)
      if (!fo_eval_at(m, pi, v, f)) return false;
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == dn) choice[i++] = 0;
    if (i == choice.size()) break;
    if (choice.empty()) break;
  }
  return true;
}

// ---- translation -------------------------------------------------------------------

namespace {

std::vector<std::string> fresh_fo_pi_labels(std::size_t count, const FoSignature& sig) {
  std::set<std::string> used(sig.constants);
  for (const auto& [p, a] : sig.predicates) {
    (void)a;
    used.insert(p);
  }
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

FoPtr fo_trans_expr(const std::vector<std::string>& labels, int pi, const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Star: return FoFormula::pred_of("*@" + labels[pi], {});
    case ExprKind::Named: return FoFormula::pred_of(e->name + "@" + labels[pi], {});
    case ExprKind::Union:
      return FoFormula::lor(fo_trans_expr(labels, pi, e->left),
                            fo_trans_expr(labels, pi, e->right));
    case ExprKind::Inter:
      return FoFormula::land(fo_trans_expr(labels, pi, e->left),
                             fo_trans_expr(labels, pi, e->right));
    case ExprKind::Diff:
      return FoFormula::land(fo_trans_expr(labels, pi, e->left),
                             FoFormula::neg(fo_trans_expr(labels, pi, e->right)));
  }
  throw std::logic_error("unreachable");
}

struct FoTranslator {
  const std::vector<std::string>& labels;
  int n;
  std::unordered_map<FoPtr, FoPtr, FoHash, FoEq> pi_independent;

  FoPtr fold(std::vector<FoPtr> parts, bool conjunction) {
    std::unordered_set<FoPtr, FoHash, FoEq> seen;
    FoPtr acc;
    for (auto& p : parts) {
      if (!seen.insert(p).second) continue;
      if (!acc) acc = p;
      else acc = conjunction ? FoFormula::land(acc, p) : FoFormula::lor(acc, p);
    }
    if (!acc) acc = conjunction ? FoFormula::tru() : FoFormula::fls();
    return acc;
  }

  FoPtr trans(int pi, const FoPtr& f) {
    switch (f->kind) {
      case FoKind::True:
      case FoKind::False: return f;
      case FoKind::Pred: return FoFormula::pred_of(f->pred + "@" + labels[pi], f->args);
      case FoKind::Not: return FoFormula::neg(trans(pi, f->lhs));
      case FoKind::And: return FoFormula::land(trans(pi, f->lhs), trans(pi, f->rhs));
      case FoKind::Or: return FoFormula::lor(trans(pi, f->lhs), trans(pi, f->rhs));
      case FoKind::Implies:
        return FoFormula::implies(trans(pi, f->lhs), trans(pi, f->rhs));
      case FoKind::Forall: return FoFormula::forall(f->var, trans(pi, f->lhs));
      case FoKind::Exists: return FoFormula::exists(f->var, trans(pi, f->lhs));
      case FoKind::Box:
      case FoKind::Diamond:
      case FoKind::Sharper: {
        auto it = pi_independent.find(f);
        if (it != pi_independent.end()) return it->second;
        std::vector<FoPtr> parts;
        for (int q = 0; q < n; ++q) {
          if (f->kind == FoKind::Box)
            parts.push_back(FoFormula::implies(fo_trans_expr(labels, q, f->expr),
                                               trans(q, f->lhs)));
          else if (f->kind == FoKind::Diamond)
            parts.push_back(FoFormula::land(fo_trans_expr(labels, q, f->expr),
                                            trans(q, f->lhs)));
          else
            parts.push_back(FoFormula::implies(fo_trans_expr(labels, q, f->expr),
                                               fo_trans_expr(labels, q, f->expr2)));
        }
        FoPtr out = fold(std::move(parts), f->kind != FoKind::Diamond);
        pi_independent.emplace(f, out);
        return out;
      }
    }
    throw std::logic_error("unreachable");
  }
};

}  // namespace

FoTranslation fo_translate(const FoPtr& f, std::size_t n) {
  if (n < 1) throw std::invalid_argument("precisification count must be at least 1");
  auto verdict = is_sentential(f);
  if (!verdict.sentential)
    throw std::invalid_argument("fo_translate requires a sentential formula");
  if (fo_modal_depth(f) > 1)
    throw std::invalid_argument("fo_translate requires modal depth <= 1; normalize first");

  FoSignature sig = collect_fo_signature(f);
  FoTranslation out;
  out.pi_labels = fresh_fo_pi_labels(n, sig);

  FoTranslator tr{out.pi_labels, static_cast<int>(n), {}};
  std::vector<FoPtr> parts;
  for (int i = 0; i < static_cast<int>(n); ++i) parts.push_back(tr.trans(i, f));
  for (int i = 0; i < static_cast<int>(n); ++i)
    parts.push_back(FoFormula::pred_of("*@" + out.pi_labels[i], {}));
  out.formula = tr.fold(std::move(parts), true);
  return out;
}

FoInterpretation superpose(const FoStructure& m) {
  FoInterpretation out;
  out.constants = m.gamma(0).constants;
  for (std::size_t i = 0; i < m.precisifications().size(); ++i) {
    const std::string& pi = m.precisifications()[i];
    for (const auto& [p, rel] : m.gamma(i).predicates) out.predicates[p + "@" + pi] = rel;
    out.predicates["*@" + pi] = {{}};
    for (const auto& [s, mask] : m.sigma())
      if (mask[i]) out.predicates[s + "@" + pi] = {{}};
  }
  return out;
}

bool fo_eval_plain(const FoInterpretation& interp, std::size_t domain_size,
                   const VarAssignment& v, const FoPtr& f) {
  switch (f->kind) {
    case FoKind::True: return true;
    case FoKind::False: return false;
    case FoKind::Pred: return pred_holds(interp, v, f);
    case FoKind::Not: return !fo_eval_plain(interp, domain_size, v, f->lhs);
    case FoKind::And:
      return fo_eval_plain(interp, domain_size, v, f->lhs) &&
             fo_eval_plain(interp, domain_size, v, f->rhs);
    case FoKind::Or:
      return fo_eval_plain(interp, domain_size, v, f->lhs) ||
             fo_eval_plain(interp, domain_size, v, f->rhs);
    case FoKind::Implies:
      return !fo_eval_plain(interp, domain_size, v, f->lhs) ||
             fo_eval_plain(interp, domain_size, v, f->rhs);
    case FoKind::Forall: {
      VarAssignment v2 = v;
      for (int d = 0; d < static_cast<int>(domain_size); ++d) {
        v2[f->var] = d;
        if (!fo_eval_plain(interp, domain_size, v2, f->lhs)) return false;
      }
      return true;
    }
    case FoKind::Exists: {
      VarAssignment v2 = v;
      for (int d = 0; d < static_cast<int>(domain_size); ++d) {
        v2[f->var] = d;
        if (fo_eval_plain(interp, domain_size, v2, f->lhs)) return true;
      }
      return false;
    }
    default:
      throw std::logic_error("fo_eval_plain: residual modal node");
  }
}

}  // namespace spl
