#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "floquet/harness/config.hpp"

namespace floquet::harness {

enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitNoBis = 2,
  kExitVerifyFailed = 3,
};

struct CommandContext {
  std::filesystem::path out_dir = ".";
  unsigned workers = 1;
  std::ostream* log = nullptr;   // progress and summaries
  std::ostream* diag = nullptr;  // diagnostics
};

struct CommandResult {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> files;
};

CommandResult cmd_phase_diagram(const RunConfig& config, const CommandContext& ctx);
CommandResult cmd_quench(const RunConfig& config, const CommandContext& ctx);
CommandResult cmd_spectrum(const RunConfig& config, const CommandContext& ctx);
CommandResult cmd_edges(const RunConfig& config, const CommandContext& ctx);
CommandResult cmd_pulses(const RunConfig& config, const CommandContext& ctx);

/// Dispatch on config["command"]; library errors become kExitError with the
/// message on ctx.diag.
CommandResult run_command(const RunConfig& config, const CommandContext& ctx);

}  // namespace floquet::harness
