#pragma once

#include <iosfwd>

namespace morreylab {

/// Runs one command line; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace morreylab
