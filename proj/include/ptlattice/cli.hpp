#pragma once

#include <iosfwd>

namespace ptlattice {

/// Command-line entry point. Subcommands: chi, diffract1d, diffract2d,
/// orders, sweep, validate. Returns 0 on success, 1 on a configuration
/// error and 2 on a numerical error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ptlattice
