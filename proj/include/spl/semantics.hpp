#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "spl/ast.hpp"
#include "spl/errors.hpp"

namespace spl {

// ---------------------------------------------------------------------------
// Structure: a standpoint model <Pi, sigma, delta>. Membership sets are kept
// as masks aligned with the precisification order. Symbols absent from
// sigma/delta denote the empty set; sigma(*) is never stored, it is always Pi.
// ---------------------------------------------------------------------------

class Structure {
public:
  // Validates: Pi non-empty and duplicate-free; every listed member a known
  // precisification; "*" not used as a sigma key; atom, standpoint and
  // precisification name spaces pairwise disjoint.
  static Structure make(std::vector<std::string> precisifications,
                        const std::map<std::string, std::vector<std::string>>& sigma,
                        const std::map<std::string, std::vector<std::string>>& delta);

  const std::vector<std::string>& precisifications() const { return pis_; }
  std::size_t pi_count() const { return pis_.size(); }
  // -1 when the label is unknown.
  int index_of(const std::string& pi) const;

  const std::map<std::string, std::vector<bool>>& sigma() const { return sigma_; }
  const std::map<std::string, std::vector<bool>>& delta() const { return delta_; }

  // Mask of sigma(s) / delta(p); all-false for unknown symbols.
  std::vector<bool> sigma_mask(const std::string& s) const;
  std::vector<bool> delta_mask(const std::string& p) const;

  // Label views used by printers.
  std::vector<std::string> sigma_labels(const std::string& s) const;
  std::vector<std::string> delta_labels(const std::string& p) const;

  bool operator==(const Structure& other) const;

private:
  std::vector<std::string> pis_;
  std::map<std::string, std::vector<bool>> sigma_;
  std::map<std::string, std::vector<bool>> delta_;
};

// sigma lifted from standpoint symbols to the full expression algebra.
std::vector<bool> sigma_eval(const Structure& m, const ExprPtr& e);

// Reference satisfaction relation. Throws domain_error when pi is not in Pi.
bool eval(const Structure& m, const std::string& pi, const FormulaPtr& f);
// True iff f holds at every precisification of m.
bool eval_global(const Structure& m, const FormulaPtr& f);
// True iff f holds at some precisification of m.
bool eval_local(const Structure& m, const FormulaPtr& f);

// ---------------------------------------------------------------------------
// Labeling model checker. Walks the subformula index bottom-up, labeling each
// precisification for truth-functional nodes and the whole model for
// Box/Diamond/Sharper nodes (their value does not depend on pi).
// ---------------------------------------------------------------------------

class LabelTable {
public:
  const std::vector<std::string>& precisifications() const { return pis_; }
  const std::vector<FormulaPtr>& subformulas() const { return subs_; }
  bool value(std::size_t sub, std::size_t pi) const { return at_[sub][pi]; }
  bool root_at(std::size_t pi) const { return at_.back()[pi]; }
  // Model-level labels, keyed by subformula index; present exactly for the
  // pi-independent entries (Box/Diamond/Sharper).
  const std::map<int, bool>& model_labels() const { return model_; }
  // Number of elementary labeling steps taken (complexity diagnostics).
  std::uint64_t steps() const { return steps_; }

private:
  friend LabelTable model_check(const Structure&, const FormulaPtr&);
  std::vector<std::string> pis_;
  std::vector<FormulaPtr> subs_;
  std::vector<std::vector<bool>> at_;  // at_[sub][pi]
  std::map<int, bool> model_;
  std::uint64_t steps_ = 0;
};

LabelTable model_check(const Structure& m, const FormulaPtr& f);

// ---------------------------------------------------------------------------
// Bounded satisfiability oracle. Enumerates candidate structures with at most
// min(cap, |Sub(f)|) precisifications over the symbols occurring in f and
// returns the first one satisfying f in the requested mode. Enumeration is
// reduced to structures with pairwise distinct precisification profiles,
// which is exhaustive: duplicating a precisification never changes any
// formula value. Throws BudgetError when the search space exceeds budget.
// ---------------------------------------------------------------------------

enum class SatMode { Global, Local };

struct OracleLimits {
  std::uint64_t budget = 1u << 24;  // max candidate structures examined
};

std::optional<Structure> sat_oracle(const FormulaPtr& f, SatMode mode, bool nonempty,
                                    std::size_t cap, OracleLimits limits = {});

// ---------------------------------------------------------------------------
// Small-model pruning: keeps one witnessing precisification per falsified
// Box/Sharper subformula (the first in Pi order), guaranteeing
// |Pi'| <= |Sub(f)| while preserving global satisfaction.
// Precondition: eval_global(m, f); throws std::invalid_argument otherwise.
// ---------------------------------------------------------------------------

Structure prune(const Structure& m, const FormulaPtr& f);

}  // namespace spl
