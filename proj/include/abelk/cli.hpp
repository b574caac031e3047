#pragma once

#include <ostream>

namespace abelk {

/// Runs one command-line invocation. Returns 0 when verdicts were computed,
/// 1 when gallery verification has a failing claim and 2 on input errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace abelk
