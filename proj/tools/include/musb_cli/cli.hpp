#pragma once

#include <ostream>

namespace musb::cli {

enum ExitCode : int { pass = 0, fail = 1, domain = 2, tolerance = 3 };

// Runs the musb command line. Normal output goes to out (or --out),
// diagnostics and summaries to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace musb::cli
