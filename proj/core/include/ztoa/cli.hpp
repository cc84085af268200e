#pragma once

namespace ztoa {

/// Command-line entry point (subcommands: run, ideal, sweep, bounds,
/// validate).  Exit codes: 0 success, 2 validation failure, 3 numerical
/// abort (boundary leak), 4 bad arguments.
int cli_main(int argc, const char* const* argv);

} // namespace ztoa
