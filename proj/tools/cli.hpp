#pragma once

#include <ostream>

namespace landweber::cli {

/// Exit codes: 0 success, 1 usage, 2 configuration rejected, 3 run failed
/// (outputs so far are kept next to a .failed marker).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace landweber::cli
