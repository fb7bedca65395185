// Command-line surface. run_cli is the whole program minus main(), so tests
// can drive it directly. Exit codes: 0 no rejection (or plain success),
// 2 rejection, 1 error.
#pragma once

#include <string>
#include <vector>

namespace seqemp {

inline constexpr const char* kArtifactVersion = "0.1.0";

int run_cli(const std::vector<std::string>& args);

} // namespace seqemp
