#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace spl::cli {

enum class Command {
  Sat, Valid, Translate, Check, Normalize, Oracle, FoSentential, FoTranslate
};
enum class Mode { Global, Local };
enum class Format { Prop, Dimacs, Tptp, Json };
enum class NormForm { Ssnf, Nnf };

// Exit-code contract: 0 = valid/holds, 10 = SAT, 20 = UNSAT/invalid, 1 = error.
inline constexpr int exit_holds = 0;
inline constexpr int exit_sat = 10;
inline constexpr int exit_unsat = 20;
inline constexpr int exit_error = 1;

struct RunConfig {
  Command command = Command::Sat;
  std::string formula_text;    // inline input; ignored when formula_file is set
  std::string formula_file;
  std::string structure_file;  // check only
  Mode mode = Mode::Global;
  bool nonempty_standpoints = false;
  std::optional<std::size_t> precisifications;  // overrides the |Sub| default
  Format format = Format::Prop;
  NormForm form = NormForm::Ssnf;  // normalize only
  bool fo_input = false;           // translate: parse input as first-order
  bool raw = false;                // translate: skip the normal-form step
  std::uint64_t budget = 50000000;

  static RunConfig defaults() { return {}; }
};

// Machine-readable output on `out`, diagnostics on `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace spl::cli
