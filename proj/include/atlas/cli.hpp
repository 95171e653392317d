#pragma once

#include <ostream>

namespace atlas {

// Full command-line driver behind the atlas binary, separated from main() so
// tests can run it in process. Exit codes: 0 success, 2 configuration or
// usage error, 3 validation error, 4 precondition or precision error,
// 5 verification failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace atlas
