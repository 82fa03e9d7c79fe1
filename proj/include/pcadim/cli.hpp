#pragma once

#include <iosfwd>

namespace pcadim {

// Full command-line entry point; see --help for subcommands. Streams are
// injectable so the CLI is testable in-process: `in` backs `--input -`,
// `out` backs `--out -`, diagnostics go to `err`.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric failure.
int run_cli(int argc, const char* const* argv, std::istream& in,
            std::ostream& out, std::ostream& err);

int run_cli(int argc, const char* const* argv);

}  // namespace pcadim
