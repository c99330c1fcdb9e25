#pragma once

#include <ostream>

namespace hatcc::cli {

/// Exit codes: 0 result (UNSAT and non-convergence included), 1 internal
/// or input error, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hatcc::cli
