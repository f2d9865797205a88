#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace wigner::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // domain or numeric failure
inline constexpr int kExitUsage = 2;    // unknown subcommand or flag, bad flag value

/// Runs one command line (without the program name). Data goes to `out`,
/// diagnostics to `err`; failures are reported on `err` as a single JSON
/// object {"error": ..., "message": ...}.
///
/// Subcommands: law, sample, eig, distance, deloc, diag, bound, rate, events.
/// Each run writes a metadata record next to its output: `<out>.meta.json`
/// for file output, otherwise `<dir>/<subcommand>.meta.json` with dir taken
/// from WIGNERLAB_OUT_DIR (default "."). `--meta PATH` overrides both.
int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace wigner::cli
