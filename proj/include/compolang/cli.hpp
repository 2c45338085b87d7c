#pragma once

#include <string>
#include <vector>

namespace compolang {

// Entry point behind the binary. Exit codes: 0 success, 1 runtime failure,
// 2 usage error, 3 invalid configuration.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);  // args without program name

}  // namespace compolang
