#pragma once

#include <ostream>

namespace qbij {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the `qbij` tool with injectable streams for testing.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace qbij
