#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "spl/cli.hpp"

using spl::cli::Command;
using spl::cli::Format;
using spl::cli::Mode;
using spl::cli::NormForm;
using spl::cli::RunConfig;

namespace {

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("formula", cfg.formula_text, "formula text");
  cmd->add_option("-f,--file", cfg.formula_file, "read the formula from a file");
  cmd->add_option("--mode", cfg.mode, "satisfiability mode")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Mode>{{"global", Mode::Global}, {"local", Mode::Local}}));
  cmd->add_flag("--nonempty-standpoints", cfg.nonempty_standpoints,
                "require every mentioned standpoint to admit some precisification");
  cmd->add_option("--precisifications", cfg.precisifications,
                  "override the precisification count (default |Sub|)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--budget", cfg.budget, "search/decision budget");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"standpoint-logic reasoning toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  const std::map<std::string, Format> formats{{"prop", Format::Prop},
                                              {"dimacs", Format::Dimacs},
                                              {"tptp", Format::Tptp},
                                              {"json", Format::Json}};

  auto* sat = app.add_subcommand("sat", "decide satisfiability via the SAT pipeline");
  add_common(sat, cfg);
  sat->callback([&] { cfg.command = Command::Sat; });

  auto* valid = app.add_subcommand("valid", "decide validity (unsatisfiability of the negation)");
  add_common(valid, cfg);
  valid->callback([&] { cfg.command = Command::Valid; });

  auto* translate = app.add_subcommand("translate", "print the precisification-indexed translation");
  add_common(translate, cfg);
  translate->add_option("--format", cfg.format, "output format")
      ->transform(CLI::CheckedTransformer(formats));
  translate->add_flag("--fo", cfg.fo_input, "parse the input as a first-order formula");
  translate->add_flag("--raw", cfg.raw, "skip the normal-form step");
  translate->callback([&] { cfg.command = Command::Translate; });

  auto* check = app.add_subcommand("check", "model-check a formula against a structure");
  add_common(check, cfg);
  check->add_option("--structure", cfg.structure_file, "structure JSON file")->required();
  check->callback([&] { cfg.command = Command::Check; });

  auto* normalize = app.add_subcommand("normalize", "print a normal form of the input");
  add_common(normalize, cfg);
  normalize->add_option("--form", cfg.form, "normal form to apply")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, NormForm>{{"ssnf", NormForm::Ssnf}, {"nnf", NormForm::Nnf}}));
  normalize->callback([&] { cfg.command = Command::Normalize; });

  auto* oracle = app.add_subcommand("oracle", "bounded brute-force satisfiability (desk scale)");
  add_common(oracle, cfg);
  oracle->callback([&] { cfg.command = Command::Oracle; });

  auto* fosent = app.add_subcommand("fo-sentential", "classify a first-order formula");
  add_common(fosent, cfg);
  fosent->callback([&] { cfg.command = Command::FoSentential; });

  auto* fotrans = app.add_subcommand("fo-translate", "translate a first-order formula");
  add_common(fotrans, cfg);
  fotrans->add_option("--format", cfg.format, "output format")
      ->transform(CLI::CheckedTransformer(formats));
  fotrans->add_flag("--raw", cfg.raw, "skip the normal-form step");
  fotrans->callback([&] {
    cfg.command = Command::FoTranslate;
    if (fotrans->count("--format") == 0) cfg.format = Format::Tptp;
  });

  CLI11_PARSE(app, argc, argv);
  return spl::cli::run(cfg, std::cout, std::cerr);
}
