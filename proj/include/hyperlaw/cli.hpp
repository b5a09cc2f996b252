#pragma once

#include <iosfwd>

namespace hyperlaw {

// Exit codes: 0 success, 1 configuration or usage error, 2 numerical failure,
// 3 when `t4-search --expect-none` finds a passing candidate.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hyperlaw
