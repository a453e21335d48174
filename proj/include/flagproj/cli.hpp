#pragma once

namespace flagproj {

/// Entry point of the command-line tool. Subcommands: gen-polytope,
/// project, verify, report-merge. Returns 0 on success, 1 when a
/// verification check failed, 2 on usage or input errors.
int run_cli(int argc, const char* const* argv);

}  // namespace flagproj
