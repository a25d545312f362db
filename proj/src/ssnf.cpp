#include "spl/ssnf.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "spl/frontend.hpp"

namespace spl {

std::size_t modal_depth(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
    case FKind::Atom:
    case FKind::Sharper: return 0;
    case FKind::Not: return modal_depth(f->lhs);
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
      return std::max(modal_depth(f->lhs), modal_depth(f->rhs));
    case FKind::Box:
    case FKind::Diamond: return 1 + modal_depth(f->lhs);
  }
  throw std::logic_error("unreachable");
}

namespace {

bool is_literal_leaf(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
    case FKind::Atom:
    case FKind::Sharper: return true;
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

struct Builder {
  std::set<std::string> taken;  // user symbols plus assigned labels
  std::unordered_map<FormulaPtr, FormulaPtr, FormulaHash, FormulaEq> labels;
  std::vector<FormulaPtr> defs;
  std::set<std::pair<std::size_t, bool>> emitted;  // (subformula hash+index key, polarity)
  std::unordered_map<FormulaPtr, int, FormulaHash, FormulaEq> ids;
  std::size_t positive = 0;
  std::size_t negative = 0;

  int id_of(const FormulaPtr& f) {
    auto it = ids.find(f);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(ids.size());
    ids.emplace(f, id);
    return id;
  }

  // The label of a formula: itself for literal leaves, the negated label of
  // the body for negations, a fresh deterministically named atom otherwise.
  FormulaPtr label(const FormulaPtr& f) {
    if (is_literal_leaf(f)) return f;
    if (f->kind == FKind::Not) return Formula::neg(label(f->lhs));
    auto it = labels.find(f);
    if (it != labels.end()) return it->second;
    char buf[20];
    std::snprintf(buf, sizeof buf, "%010llx",
                  static_cast<unsigned long long>(fnv64(print_formula(f)) & 0xffffffffffULL));
    std::string name = std::string(ssnf_label_prefix()) + buf;
    while (taken.count(name)) name += "x";
    taken.insert(name);
    auto lab = Formula::atom(name);
    labels.emplace(f, lab);
    return lab;
  }

  void walk(const FormulaPtr& f, bool positive_polarity) {
    if (is_literal_leaf(f)) return;
    if (f->kind == FKind::Not) {
      walk(f->lhs, !positive_polarity);
      return;
    }
    auto key = std::make_pair(static_cast<std::size_t>(id_of(f)), positive_polarity);
    if (!emitted.insert(key).second) return;

    FormulaPtr body;
    switch (f->kind) {
      case FKind::And: body = Formula::land(label(f->lhs), label(f->rhs)); break;
      case FKind::Or: body = Formula::lor(label(f->lhs), label(f->rhs)); break;
      case FKind::Implies: body = Formula::implies(label(f->lhs), label(f->rhs)); break;
      case FKind::Box: body = Formula::box(f->expr, label(f->lhs)); break;
      case FKind::Diamond: body = Formula::diamond(f->expr, label(f->lhs)); break;
      default: throw std::logic_error("unreachable");
    }
    if (positive_polarity) {
      defs.push_back(Formula::implies(label(f), body));
      ++positive;
    } else {
      defs.push_back(Formula::implies(body, label(f)));
      ++negative;
    }
    switch (f->kind) {
      case FKind::And:
      case FKind::Or:
        walk(f->lhs, positive_polarity);
        walk(f->rhs, positive_polarity);
        break;
      case FKind::Implies:
        walk(f->lhs, !positive_polarity);
        walk(f->rhs, positive_polarity);
        break;
      case FKind::Box:
      case FKind::Diamond:
        walk(f->lhs, positive_polarity);
        break;
      default: break;
    }
  }
};

}  // namespace

SsnfResult ssnf_with_stats(const FormulaPtr& f) {
  Builder b;
  SymbolSet syms = collect_symbols(f);
  b.taken.insert(syms.atoms.begin(), syms.atoms.end());
  b.taken.insert(syms.standpoints.begin(), syms.standpoints.end());

  FormulaPtr root_label = b.label(f);
  b.walk(f, true);

  SsnfResult out;
  out.positive_defs = b.positive;
  out.negative_defs = b.negative;
  FormulaPtr acc = root_label;
  for (const auto& d : b.defs) acc = Formula::land(acc, d);
  out.formula = acc;
  return out;
}

FormulaPtr ssnf(const FormulaPtr& f) { return ssnf_with_stats(f).formula; }

}  // namespace spl
