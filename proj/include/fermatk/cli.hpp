#pragma once

#include <iosfwd>

namespace fermatk {

// Exit codes: 0 success (pipeline: every form eliminated and the expected
// threshold reached), 1 pipeline inconclusive, 2 input or usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace fermatk
