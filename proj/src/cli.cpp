#include "spl/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "spl/ast.hpp"
#include "spl/errors.hpp"
#include "spl/fosl.hpp"
#include "spl/frontend.hpp"
#include "spl/sat.hpp"
#include "spl/semantics.hpp"
#include "spl/ssnf.hpp"
#include "spl/translate.hpp"

namespace spl::cli {

namespace {

std::string load_text(const RunConfig& cfg) {
  if (cfg.formula_file.empty()) return cfg.formula_text;
  std::ifstream in(cfg.formula_file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + cfg.formula_file);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Applies mode wrapping and the nonempty-standpoints conjuncts, then desugars.
FormulaPtr build_query(const FormulaPtr& input, const RunConfig& cfg, bool negate) {
  FormulaPtr q = input;
  if (negate) q = Formula::neg(q);
  bool wrap_local = cfg.mode == Mode::Local || negate;  // validity = no countermodel
                                                        // at any precisification
  if (wrap_local) q = Formula::diamond(StandpointExpr::star(), q);
  if (cfg.nonempty_standpoints)
    for (const auto& s : collect_symbols(input).standpoints)
      q = Formula::land(q, Formula::diamond(StandpointExpr::named(s), Formula::tru()));
  return desugar(q);
}

struct PipelineResult {
  bool sat = false;
  Structure model = Structure::make({"pi1"}, {}, {});
};

PipelineResult run_pipeline(const FormulaPtr& core, const RunConfig& cfg) {
  FormulaPtr nf = ssnf(core);
  std::size_t n = cfg.precisifications.value_or(formula_size(nf));
  Translation tr = translate_formula(nf, n);
  CnfResult cnf = to_cnf(tr.formula, tr.vocab);
  SolveResult res = solve(cnf.cnf, cfg.budget);
  PipelineResult out;
  out.sat = res.status == SolveStatus::Sat;
  if (out.sat) {
    Valuation v;
    for (const auto& [atom, var] : cnf.atom_vars) v.values[atom] = res.assignment.value(var);
    out.model = extract_model(v, tr.vocab);
  }
  return out;
}

// Definitional atoms are dropped from displayed models; the remaining
// structure still satisfies the original formula, which never mentions them.
Structure strip_definitional(const Structure& m) {
  std::map<std::string, std::vector<std::string>> sigma, delta;
  for (const auto& [s, mask] : m.sigma()) {
    (void)mask;
    sigma[s] = m.sigma_labels(s);
  }
  const std::string prefix = ssnf_label_prefix();
  for (const auto& [p, mask] : m.delta()) {
    (void)mask;
    if (p.rfind(prefix, 0) == 0) continue;
    delta[p] = m.delta_labels(p);
  }
  return Structure::make(m.precisifications(), sigma, delta);
}

int cmd_sat(const RunConfig& cfg, std::ostream& out) {
  FormulaPtr f = parse_formula(load_text(cfg));
  PipelineResult res = run_pipeline(build_query(f, cfg, false), cfg);
  if (res.sat) {
    out << "SAT\n" << print_structure(strip_definitional(res.model)) << "\n";
    return exit_sat;
  }
  out << "UNSAT\n";
  return exit_unsat;
}

int cmd_valid(const RunConfig& cfg, std::ostream& out) {
  FormulaPtr f = parse_formula(load_text(cfg));
  PipelineResult res = run_pipeline(build_query(f, cfg, true), cfg);
  if (res.sat) {
    out << "INVALID\n" << print_structure(strip_definitional(res.model)) << "\n";
    return exit_unsat;
  }
  out << "VALID\n";
  return exit_holds;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  FormulaPtr f = parse_formula(load_text(cfg));
  FormulaPtr core = desugar(f);
  std::size_t cap = cfg.precisifications.value_or(formula_size(core));
  SatMode mode = cfg.mode == Mode::Local ? SatMode::Local : SatMode::Global;
  auto m = sat_oracle(core, mode, cfg.nonempty_standpoints, cap, {cfg.budget});
  if (m) {
    out << "SAT\n" << print_structure(*m) << "\n";
    return exit_sat;
  }
  out << "UNSAT\n";
  return exit_unsat;
}

int cmd_translate_prop(const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == Format::Tptp)
    throw std::runtime_error("TPTP output needs first-order input (use --fo)");
  FormulaPtr core = build_query(parse_formula(load_text(cfg)), cfg, false);
  FormulaPtr nf = cfg.raw ? core : ssnf(core);
  std::size_t n = cfg.precisifications.value_or(formula_size(nf));
  Translation tr = translate_formula(nf, n);
  if (cfg.format == Format::Dimacs) {
    out << emit_dimacs(to_cnf(tr.formula, tr.vocab).cnf);
  } else {
    out << print_prop(tr.formula, tr.vocab) << "\n";
  }
  return exit_holds;
}

int cmd_translate_fo(const RunConfig& cfg, std::ostream& out) {
  FoPtr f = parse_fo_formula(load_text(cfg));
  auto verdict = is_sentential(f);
  if (!verdict.sentential) {
    std::string vs;
    for (const auto& x : verdict.free_vars) vs += (vs.empty() ? "" : ", ") + x;
    throw std::runtime_error("input is not sentential: free variable(s) " + vs +
                             " under " + print_fo_formula(verdict.offender));
  }
  FoPtr nf = cfg.raw ? f : fo_ssnf(f);
  std::size_t n = cfg.precisifications.value_or(fo_size(nf));
  FoTranslation tr = fo_translate(nf, n);
  if (cfg.format == Format::Tptp || cfg.format == Format::Prop) {
    if (cfg.format == Format::Tptp) {
      TptpResult t = to_tptp(tr.formula, "trans");
      for (const auto& [mangled, original] : t.name_map)
        out << "% " << mangled << " = " << original << "\n";
      out << t.text;
    } else {
      out << print_fo_formula(tr.formula) << "\n";
    }
    return exit_holds;
  }
  throw std::runtime_error("unsupported output format for first-order input");
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  if (cfg.structure_file.empty())
    throw std::runtime_error("check needs --structure <file.json>");
  std::ifstream in(cfg.structure_file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + cfg.structure_file);
  std::ostringstream buf;
  buf << in.rdbuf();
  Structure m = parse_structure(buf.str());
  FormulaPtr f = desugar(parse_formula(load_text(cfg)));
  LabelTable t = model_check(m, f);
  bool all = true;
  for (std::size_t p = 0; p < t.precisifications().size(); ++p) {
    bool v = t.root_at(p);
    all = all && v;
    out << t.precisifications()[p] << ": " << (v ? "true" : "false") << "\n";
  }
  out << "GLOBAL: " << (all ? "true" : "false") << "\n";
  return all ? exit_holds : exit_unsat;
}

int cmd_normalize(const RunConfig& cfg, std::ostream& out) {
  FormulaPtr core = desugar(parse_formula(load_text(cfg)));
  FormulaPtr result = cfg.form == NormForm::Nnf ? nnf(core) : ssnf(core);
  out << print_formula(result) << "\n";
  return exit_holds;
}

int cmd_fo_sentential(const RunConfig& cfg, std::ostream& out) {
  FoPtr f = parse_fo_formula(load_text(cfg));
  auto verdict = is_sentential(f);
  if (verdict.sentential) {
    out << "SENTENTIAL\n";
    return exit_holds;
  }
  std::string vs;
  for (const auto& x : verdict.free_vars) vs += (vs.empty() ? "" : ", ") + x;
  out << "NOT SENTENTIAL: free variable(s) " << vs << " under "
      << print_fo_formula(verdict.offender) << "\n";
  return exit_unsat;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::Sat: return cmd_sat(cfg, out);
      case Command::Valid: return cmd_valid(cfg, out);
      case Command::Oracle: return cmd_oracle(cfg, out);
      case Command::Translate:
        return cfg.fo_input ? cmd_translate_fo(cfg, out) : cmd_translate_prop(cfg, out);
      case Command::FoTranslate: return cmd_translate_fo(cfg, out);
      case Command::Check: return cmd_check(cfg, out);
      case Command::Normalize: return cmd_normalize(cfg, out);
      case Command::FoSentential: return cmd_fo_sentential(cfg, out);
    }
    err << "error: unknown command\n";
    return exit_error;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << " (at " << e.span().start << ".." << e.span().end
        << ")\n";
    return exit_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_error;
  }
}

}  // namespace spl::cli
