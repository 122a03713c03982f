#pragma once

#include <string>
#include <vector>

namespace stablehcm {
namespace cli {

// Dispatches one subcommand.  Returns the process exit code: 0 for
// pass/success, 1 for a failed check (with --expect fail the two are
// swapped), 2 for usage or domain errors.
int run(int argc, const char* const* argv);

// Convenience overload for tests: args without the program name.
int run(const std::vector<std::string>& args);

}  // namespace cli
}  // namespace stablehcm
