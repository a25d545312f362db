#include "spl/semantics.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace spl {

// ---- Structure --------------------------------------------------------------

Structure Structure::make(std::vector<std::string> precisifications,
                          const std::map<std::string, std::vector<std::string>>& sigma,
                          const std::map<std::string, std::vector<std::string>>& delta) {
  if (precisifications.empty())
    throw std::invalid_argument("precisification set must be non-empty");
  Structure m;
  m.pis_ = std::move(precisifications);
  std::map<std::string, int> where;
  for (std::size_t i = 0; i < m.pis_.size(); ++i) {
    if (!where.emplace(m.pis_[i], static_cast<int>(i)).second)
      throw std::invalid_argument("duplicate precisification name " + m.pis_[i]);
  }
  auto to_mask = [&](const std::vector<std::string>& members, const std::string& key) {
    std::vector<bool> mask(m.pis_.size(), false);
    for (const auto& p : members) {
      auto it = where.find(p);
      if (it == where.end())
        throw std::invalid_argument("unknown precisification " + p + " in entry for " + key);
      mask[it->second] = true;
    }
    return mask;
  };
  for (const auto& [s, members] : sigma) {
    if (s == "*")
      throw std::invalid_argument("'*' must not appear as a sigma key (it is always Pi)");
    m.sigma_.emplace(s, to_mask(members, s));
  }
  for (const auto& [p, members] : delta) m.delta_.emplace(p, to_mask(members, p));
  // Atom, standpoint and precisification names live in disjoint spaces.
  for (const auto& [s, mask] : m.sigma_) {
    (void)mask;
    if (m.delta_.count(s))
      throw std::invalid_argument("name " + s + " used as both standpoint and atom");
    if (where.count(s))
      throw std::invalid_argument("name " + s + " used as both standpoint and precisification");
  }
  for (const auto& [p, mask] : m.delta_) {
    (void)mask;
    if (where.count(p))
      throw std::invalid_argument("name " + p + " used as both atom and precisification");
  }
  return m;
}

int Structure::index_of(const std::string& pi) const {
  auto it = std::find(pis_.begin(), pis_.end(), pi);
  return it == pis_.end() ? -1 : static_cast<int>(it - pis_.begin());
}

std::vector<bool> Structure::sigma_mask(const std::string& s) const {
  auto it = sigma_.find(s);
  if (it != sigma_.end()) return it->second;
  return std::vector<bool>(pis_.size(), false);
}

std::vector<bool> Structure::delta_mask(const std::string& p) const {
  auto it = delta_.find(p);
  if (it != delta_.end()) return it->second;
  return std::vector<bool>(pis_.size(), false);
}

static std::vector<std::string> mask_labels(const std::vector<std::string>& pis,
                                            const std::vector<bool>& mask) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < pis.size(); ++i)
    if (mask[i]) out.push_back(pis[i]);
  return out;
}

std::vector<std::string> Structure::sigma_labels(const std::string& s) const {
  return mask_labels(pis_, sigma_mask(s));
}
std::vector<std::string> Structure::delta_labels(const std::string& p) const {
  return mask_labels(pis_, delta_mask(p));
}

bool Structure::operator==(const Structure& other) const {
  return pis_ == other.pis_ && sigma_ == other.sigma_ && delta_ == other.delta_;
}

// ---- sigma_eval --------------------------------------------------------------

std::vector<bool> sigma_eval(const Structure& m, const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Star: return std::vector<bool>(m.pi_count(), true);
    case ExprKind::Named: return m.sigma_mask(e->name);
    case ExprKind::Union: {
      auto a = sigma_eval(m, e->left), b = sigma_eval(m, e->right);
      for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] || b[i];
      return a;
    }
    case ExprKind::Inter: {
      auto a = sigma_eval(m, e->left), b = sigma_eval(m, e->right);
      for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] && b[i];
      return a;
    }
    case ExprKind::Diff: {
      auto a = sigma_eval(m, e->left), b = sigma_eval(m, e->right);
      for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] && !b[i];
      return a;
    }
  }
  throw std::logic_error("unreachable");
}

// ---- eval ---------------------------------------------------------------------

static bool eval_at(const Structure& m, std::size_t pi, const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::True: return true;
    case FKind::False: return false;
    case FKind::Atom: return m.delta_mask(f->name)[pi];
    case FKind::Not: return !eval_at(m, pi, f->lhs);
    case FKind::And: return eval_at(m, pi, f->lhs) && eval_at(m, pi, f->rhs);
    case FKind::Or: return eval_at(m, pi, f->lhs) || eval_at(m, pi, f->rhs);
    case FKind::Implies: return !eval_at(m, pi, f->lhs) || eval_at(m, pi, f->rhs);
    case FKind::Box: {
      auto mask = sigma_eval(m, f->expr);
      for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i] && !eval_at(m, i, f->lhs)) return false;
      return true;
    }
    case FKind::Diamond: {
      auto mask = sigma_eval(m, f->expr);
      for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i] && eval_at(m, i, f->lhs)) return true;
      return false;
    }
    case FKind::Sharper: {
      auto a = sigma_eval(m, f->expr), b = sigma_eval(m, f->expr2);
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && !b[i]) return false;
      return true;
    }
  }
  throw std::logic_error("unreachable");
}

bool eval(const Structure& m, const std::string& pi, const FormulaPtr& f) {
  int i = m.index_of(pi);
  if (i < 0) throw std::domain_error("precisification " + pi + " not in Pi");
  return eval_at(m, static_cast<std::size_t>(i), f);
}

bool eval_global(const Structure& m, const FormulaPtr& f) {
  for (std::size_t i = 0; i < m.pi_count(); ++i)
    if (!eval_at(m, i, f)) return false;
  return true;
}

bool eval_local(const Structure& m, const FormulaPtr& f) {
  for (std::size_t i = 0; i < m.pi_count(); ++i)
    if (eval_at(m, i, f)) return true;
  return false;
}

// ---- model_check -----------------------------------------------------------------

namespace {

std::vector<bool> sigma_eval_counted(const Structure& m, const ExprPtr& e,
                                     std::uint64_t& steps) {
  steps += m.pi_count();
  switch (e->kind) {
    case ExprKind::Star: return std::vector<bool>(m.pi_count(), true);
    case ExprKind::Named: return m.sigma_mask(e->name);
    case ExprKind::Union:
    case ExprKind::Inter:
    case ExprKind::Diff: {
      auto a = sigma_eval_counted(m, e->left, steps);
      auto b = sigma_eval_counted(m, e->right, steps);
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (e->kind == ExprKind::Union) a[i] = a[i] || b[i];
        else if (e->kind == ExprKind::Inter) a[i] = a[i] && b[i];
        else a[i] = a[i] && !b[i];
      }
      return a;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

LabelTable model_check(const Structure& m, const FormulaPtr& f) {
  SubformulaIndex idx(f);
  const std::size_t np = m.pi_count();
  LabelTable t;
  t.pis_ = m.precisifications();
  t.subs_ = idx.entries();
  t.at_.assign(idx.size(), std::vector<bool>(np, false));

  for (std::size_t i = 0; i < idx.size(); ++i) {
    const FormulaPtr& sub = idx.entries()[i];
    auto& row = t.at_[i];
    int l = sub->lhs ? idx.index_of(sub->lhs) : -1;
    int r = sub->rhs ? idx.index_of(sub->rhs) : -1;
    switch (sub->kind) {
      case FKind::True:
        row.assign(np, true);
        t.steps_ += np;
        break;
      case FKind::False:
        row.assign(np, false);
        t.steps_ += np;
        break;
      case FKind::Atom:
        row = m.delta_mask(sub->name);
        t.steps_ += np;
        break;
      case FKind::Not:
        for (std::size_t p = 0; p < np; ++p) row[p] = !t.at_[l][p];
        t.steps_ += np;
        break;
      case FKind::And:
        for (std::size_t p = 0; p < np; ++p) row[p] = t.at_[l][p] && t.at_[r][p];
        t.steps_ += np;
        break;
      case FKind::Or:
        for (std::size_t p = 0; p < np; ++p) row[p] = t.at_[l][p] || t.at_[r][p];
        t.steps_ += np;
        break;
      case FKind::Implies:
        for (std::size_t p = 0; p < np; ++p) row[p] = !t.at_[l][p] || t.at_[r][p];
        t.steps_ += np;
        break;
      case FKind::Box: {
        auto mask = sigma_eval_counted(m, sub->expr, t.steps_);
        bool ok = true;
        for (std::size_t p = 0; p < np; ++p)
          if (mask[p] && !t.at_[l][p]) { ok = false; break; }
        row.assign(np, ok);
        t.model_[static_cast<int>(i)] = ok;
        t.steps_ += np;
        break;
      }
      case FKind::Diamond: {
        auto mask = sigma_eval_counted(m, sub->expr, t.steps_);
        bool ok = false;
        for (std::size_t p = 0; p < np; ++p)
          if (mask[p] && t.at_[l][p]) { ok = true; break; }
        row.assign(np, ok);
        t.model_[static_cast<int>(i)] = ok;
        t.steps_ += np;
        break;
      }
      case FKind::Sharper: {
        auto a = sigma_eval_counted(m, sub->expr, t.steps_);
        auto b = sigma_eval_counted(m, sub->expr2, t.steps_);
        bool ok = true;
        for (std::size_t p = 0; p < np; ++p)
          if (a[p] && !b[p]) { ok = false; break; }
        row.assign(np, ok);
        t.model_[static_cast<int>(i)] = ok;
        t.steps_ += np;
        break;
      }
    }
  }
  return t;
}

// ---- sat_oracle ----------------------------------------------------------------

namespace {

// Compiled form for the profile-space search. A "profile" assigns a truth
// value to every occurring atom and a membership flag to every occurring
// standpoint; a candidate structure is a non-empty set of distinct profiles.
// Any structure collapses to its profile set without changing formula values,
// so this enumeration is exhaustive for every precisification count.
struct CompiledNode {
  FKind kind;
  int lhs = -1;
  int rhs = -1;
  std::uint64_t atom_mask = 0;  // Atom: profiles where the atom holds
  std::uint64_t e1 = 0;         // Box/Diamond/Sharper: sigma_eval as profile mask
  std::uint64_t e2 = 0;         // Sharper only
};

std::uint64_t expr_profile_mask(const ExprPtr& e,
                                const std::map<std::string, int>& stand_bit,
                                unsigned k, std::uint64_t full) {
  switch (e->kind) {
    case ExprKind::Star: return full;
    case ExprKind::Named: {
      auto it = stand_bit.find(e->name);
      if (it == stand_bit.end()) return 0;  // unknown symbols denote the empty set
      std::uint64_t out = 0;
      for (unsigned t = 0; t < (1u << k); ++t)
        if (t >> it->second & 1u) out |= 1ULL << t;
      return out;
    }
    case ExprKind::Union:
      return expr_profile_mask(e->left, stand_bit, k, full) |
             expr_profile_mask(e->right, stand_bit, k, full);
    case ExprKind::Inter:
      return expr_profile_mask(e->left, stand_bit, k, full) &
             expr_profile_mask(e->right, stand_bit, k, full);
    case ExprKind::Diff:
      return expr_profile_mask(e->left, stand_bit, k, full) &
             ~expr_profile_mask(e->right, stand_bit, k, full) & full;
  }
  throw std::logic_error("unreachable");
}

std::vector<std::string> fresh_pi_labels(std::size_t count, const SymbolSet& taken) {
  std::set<std::string> used(taken.atoms.begin(), taken.atoms.end());
  used.insert(taken.standpoints.begin(), taken.standpoints.end());
  std::string prefix = "p";
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

}  // namespace

std::optional<Structure> sat_oracle(const FormulaPtr& f, SatMode mode, bool nonempty,
                                    std::size_t cap, OracleLimits limits) {
  if (cap < 1) throw std::invalid_argument("cap must be at least 1");
  SymbolSet syms = collect_symbols(f);
  const std::size_t k = syms.atoms.size() + syms.standpoints.size();
  if (k > 6)
    throw BudgetError("search space too large: " + std::to_string(k) +
                      " symbols exceed the oracle's profile range");
  const unsigned nt = 1u << k;  // distinct profiles
  const std::uint64_t full = (nt == 64) ? ~0ULL : ((1ULL << nt) - 1);

  // Bit layout of a profile: atoms first (sorted), then standpoints (sorted).
  std::map<std::string, int> atom_bit, stand_bit;
  for (std::size_t i = 0; i < syms.atoms.size(); ++i)
    atom_bit[syms.atoms[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < syms.standpoints.size(); ++i)
    stand_bit[syms.standpoints[i]] = static_cast<int>(syms.atoms.size() + i);

  SubformulaIndex idx(f);
  std::vector<CompiledNode> nodes(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const FormulaPtr& sub = idx.entries()[i];
    CompiledNode& n = nodes[i];
    n.kind = sub->kind;
    if (sub->lhs) n.lhs = idx.index_of(sub->lhs);
    if (sub->rhs) n.rhs = idx.index_of(sub->rhs);
    if (sub->kind == FKind::Atom) {
      int bit = atom_bit.at(sub->name);
      for (unsigned t = 0; t < nt; ++t)
        if (t >> bit & 1u) n.atom_mask |= 1ULL << t;
    } else if (sub->kind == FKind::Box || sub->kind == FKind::Diamond) {
      n.e1 = expr_profile_mask(sub->expr, stand_bit, static_cast<unsigned>(k), full);
    } else if (sub->kind == FKind::Sharper) {
      n.e1 = expr_profile_mask(sub->expr, stand_bit, static_cast<unsigned>(k), full);
      n.e2 = expr_profile_mask(sub->expr2, stand_bit, static_cast<unsigned>(k), full);
    }
  }

  std::vector<std::uint64_t> stand_any(syms.standpoints.size(), 0);
  for (std::size_t s = 0; s < syms.standpoints.size(); ++s)
    stand_any[s] = expr_profile_mask(StandpointExpr::named(syms.standpoints[s]),
                                     stand_bit, static_cast<unsigned>(k), full);

  std::vector<std::uint64_t> val(nodes.size(), 0);
  auto satisfies = [&](std::uint64_t present) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const CompiledNode& n = nodes[i];
      switch (n.kind) {
        case FKind::True: val[i] = full; break;
        case FKind::False: val[i] = 0; break;
        case FKind::Atom: val[i] = n.atom_mask; break;
        case FKind::Not: val[i] = ~val[n.lhs] & full; break;
        case FKind::And: val[i] = val[n.lhs] & val[n.rhs]; break;
        case FKind::Or: val[i] = val[n.lhs] | val[n.rhs]; break;
        case FKind::Implies: val[i] = (~val[n.lhs] | val[n.rhs]) & full; break;
        case FKind::Box:
          val[i] = (present & n.e1 & ~val[n.lhs]) == 0 ? full : 0;
          break;
        case FKind::Diamond:
          val[i] = (present & n.e1 & val[n.lhs]) != 0 ? full : 0;
          break;
        case FKind::Sharper:
          val[i] = (present & n.e1 & ~n.e2) == 0 ? full : 0;
          break;
      }
    }
    std::uint64_t root = val.back();
    return mode == SatMode::Global ? (present & ~root) == 0 : (present & root) != 0;
  };

  auto admissible = [&](std::uint64_t present) {
    if (!nonempty) return true;
    for (auto any : stand_any)
      if ((present & any) == 0) return false;
    return true;
  };

  auto build = [&](std::uint64_t present) {
    std::vector<unsigned> profiles;
    for (unsigned t = 0; t < nt; ++t)
      if (present >> t & 1ULL) profiles.push_back(t);
    auto labels = fresh_pi_labels(profiles.size(), syms);
    std::map<std::string, std::vector<std::string>> sig, del;
    for (const auto& [a, bit] : atom_bit) {
      std::vector<std::string> members;
      for (std::size_t i = 0; i < profiles.size(); ++i)
        if (profiles[i] >> bit & 1u) members.push_back(labels[i]);
      del[a] = members;
    }
    for (const auto& [s, bit] : stand_bit) {
      std::vector<std::string> members;
      for (std::size_t i = 0; i < profiles.size(); ++i)
        if (profiles[i] >> bit & 1u) members.push_back(labels[i]);
      sig[s] = members;
    }
    return Structure::make(labels, sig, del);
  };

  const std::size_t max_size = std::min({cap, idx.size(), static_cast<std::size_t>(nt)});
  std::uint64_t examined = 0;
  for (std::size_t j = 1; j <= max_size; ++j) {
    // Size-j profile subsets in lexicographic order.
    std::vector<unsigned> c(j);
    for (std::size_t i = 0; i < j; ++i) c[i] = static_cast<unsigned>(i);
    for (;;) {
      if (++examined > limits.budget)
        throw BudgetError("search space too large: oracle budget of " +
                          std::to_string(limits.budget) + " structures exceeded");
      std::uint64_t present = 0;
      for (unsigned t : c) present |= 1ULL << t;
      if (admissible(present) && satisfies(present)) return build(present);
      // next combination
      std::size_t i = j;
      while (i > 0 && c[i - 1] == nt - j + (i - 1)) --i;
      if (i == 0) break;
      ++c[i - 1];
      for (std::size_t q = i; q < j; ++q) c[q] = c[q - 1] + 1;
    }
  }
  return std::nullopt;
}

// ---- prune -----------------------------------------------------------------------

Structure prune(const Structure& m, const FormulaPtr& f) {
  SubformulaIndex idx(f);
  LabelTable t = model_check(m, f);
  const std::size_t np = m.pi_count();
  for (std::size_t p = 0; p < np; ++p)
    if (!t.root_at(p))
      throw std::invalid_argument("prune precondition violated: structure does not "
                                  "globally satisfy the formula");

  std::set<std::size_t> keep;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const FormulaPtr& sub = idx.entries()[i];
    if (sub->kind == FKind::Box) {
      if (t.model_labels().at(static_cast<int>(i))) continue;
      auto mask = sigma_eval(m, sub->expr);
      int child = idx.index_of(sub->lhs);
      for (std::size_t p = 0; p < np; ++p)
        if (mask[p] && !t.value(child, p)) { keep.insert(p); break; }
    } else if (sub->kind == FKind::Diamond) {
      // Dual case: a true Diamond keeps the precisification witnessing it.
      if (!t.model_labels().at(static_cast<int>(i))) continue;
      auto mask = sigma_eval(m, sub->expr);
      int child = idx.index_of(sub->lhs);
      for (std::size_t p = 0; p < np; ++p)
        if (mask[p] && t.value(child, p)) { keep.insert(p); break; }
    } else if (sub->kind == FKind::Sharper) {
      if (t.model_labels().at(static_cast<int>(i))) continue;
      auto a = sigma_eval(m, sub->expr), b = sigma_eval(m, sub->expr2);
      for (std::size_t p = 0; p < np; ++p)
        if (a[p] && !b[p]) { keep.insert(p); break; }
    }
  }
  if (keep.empty()) keep.insert(0);

  std::vector<std::string> pis;
  for (auto p : keep) pis.push_back(m.precisifications()[p]);
  std::map<std::string, std::vector<std::string>> sig, del;
  for (const auto& [s, mask] : m.sigma()) {
    std::vector<std::string> members;
    for (auto p : keep)
      if (mask[p]) members.push_back(m.precisifications()[p]);
    sig[s] = members;
  }
  for (const auto& [a, mask] : m.delta()) {
    std::vector<std::string> members;
    for (auto p : keep)
      if (mask[p]) members.push_back(m.precisifications()[p]);
    del[a] = members;
  }
  return Structure::make(pis, sig, del);
}

}  // namespace spl
