#include <doctest.h>

#include "helpers.hpp"
#include "spl/ast.hpp"
#include "spl/frontend.hpp"
#include "spl/semantics.hpp"

using namespace spl;

namespace {
const ExprPtr S = StandpointExpr::named("s");
const ExprPtr T = StandpointExpr::named("t");
const FormulaPtr P = Formula::atom("p");
const FormulaPtr Q = Formula::atom("q");
}  // namespace

TEST_CASE("desugar eliminates diamond via box duality") {
  auto f = Formula::diamond(S, P);
  auto expected = Formula::neg(Formula::box(S, Formula::neg(P)));
  CHECK(formula_equal(desugar(f), expected));
}

TEST_CASE("desugar is the identity on core formulas") {
  auto f = Formula::land(P, Formula::box(S, Formula::neg(Q)));
  CHECK(formula_equal(desugar(f), f));
  CHECK(formula_equal(desugar(P), P));
}

TEST_CASE("desugar lowers sharpening on request") {
  auto f = Formula::sharper(S, T);
  CHECK(formula_equal(desugar(f), f));
  auto lowered = desugar(f, true);
  CHECK(formula_equal(lowered,
                      Formula::box(StandpointExpr::diff_of(S, T), Formula::fls())));
}

TEST_CASE("desugar is idempotent and size-bounded") {
  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) {
    auto f = testgen::random_formula(rng, {"p", "q"}, {"s", "t"}, 4);
    auto d = desugar(f);
    CHECK(formula_equal(desugar(d), d));
    CHECK(formula_size(d) <= 3 * formula_size(f));
  }
}

TEST_CASE("nnf pushes negations to the leaves") {
  CHECK(print_formula(nnf(Formula::neg(Formula::land(P, Q)))) == "~p | ~q");
  CHECK(print_formula(nnf(Formula::neg(Formula::box(S, P)))) == "<s> ~p");
  CHECK(formula_equal(nnf(Formula::neg(Formula::neg(P))), P));
}

TEST_CASE("desugar and nnf preserve the evaluator's verdict") {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    auto f = testgen::random_formula(rng, {"p", "q"}, {"s", "t"}, 3);
    auto m = testgen::random_structure(rng, {"p", "q"}, {"s", "t"}, 4);
    auto d = desugar(f);
    auto n = nnf(d);
    for (const auto& pi : m.precisifications()) {
      bool reference = eval(m, pi, f);
      CHECK(eval(m, pi, d) == reference);
      CHECK(eval(m, pi, n) == reference);
    }
  }
}

TEST_CASE("both sharpening routes agree under evaluation") {
  std::mt19937 rng(13);
  for (int i = 0; i < 200; ++i) {
    auto f = testgen::random_formula(rng, {"p"}, {"s", "t"}, 3);
    auto kept = desugar(f);
    auto lowered = desugar(f, true);
    auto m = testgen::random_structure(rng, {"p"}, {"s", "t"}, 3);
    for (const auto& pi : m.precisifications())
      CHECK(eval(m, pi, kept) == eval(m, pi, lowered));
  }
}

TEST_CASE("subformulas of a single atom") {
  SubformulaIndex idx(P);
  REQUIRE(idx.size() == 1);
  CHECK(formula_equal(idx.entries()[0], P));
}

TEST_CASE("subformulas are topologically ordered with the root last") {
  auto f = Formula::land(Formula::box(S, P), P);
  SubformulaIndex idx(f);
  REQUIRE(idx.size() == 3);
  CHECK(formula_equal(idx.entries()[0], P));
  CHECK(formula_equal(idx.entries()[1], Formula::box(S, P)));
  CHECK(formula_equal(idx.entries()[2], f));
}

TEST_CASE("subformulas deduplicate structurally") {
  auto f = Formula::land(P, P);
  SubformulaIndex idx(f);
  CHECK(idx.size() == 2);
  CHECK(formula_size(f) == 2);
}

TEST_CASE("subformula order puts children before parents") {
  std::mt19937 rng(17);
  for (int i = 0; i < 200; ++i) {
    auto f = testgen::random_formula(rng, {"p", "q"}, {"s", "t"}, 4);
    SubformulaIndex idx(f);
    for (std::size_t i2 = 0; i2 < idx.size(); ++i2) {
      const auto& sub = idx.entries()[i2];
      if (sub->lhs) CHECK(idx.index_of(sub->lhs) < static_cast<int>(i2));
      if (sub->rhs) CHECK(idx.index_of(sub->rhs) < static_cast<int>(i2));
    }
    CHECK(formula_equal(idx.entries().back(), f));
  }
}

TEST_CASE("subformula labels are dense and deterministic") {
  auto f = Formula::land(Formula::box(S, P), Q);
  SubformulaIndex a(f), b(f);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(formula_equal(a.entries()[i], b.entries()[i]));
    CHECK(a.label(i) == b.label(i));
  }
  CHECK(a.label(0) == "pi1");
}

TEST_CASE("collect_symbols finds atoms and standpoint names") {
  auto f = Formula::land(Formula::box(StandpointExpr::union_of(S, T), P),
                         Formula::sharper(StandpointExpr::named("v"), T));
  auto syms = collect_symbols(f);
  CHECK(syms.atoms == std::vector<std::string>{"p"});
  CHECK(syms.standpoints == std::vector<std::string>{"s", "t", "v"});
}
