#pragma once

// Command-line front end. Exit codes: 0 success, 1 domain error (including
// malformed or unknown flags), 2 capacity error, 3 internal failure.

#include <ostream>
#include <string>
#include <vector>

namespace cantor::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitCapacity = 2;
inline constexpr int kExitInternal = 3;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cantor::cli
