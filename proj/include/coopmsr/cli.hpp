#pragma once

#include <ostream>

namespace coopmsr::cli {

// Exit codes: 0 success, 1 operation failed (mismatch, non-optimal repair,
// MDS verdict false), 2 usage, 3 resource guard, 4 I/O.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitGuard = 3;
inline constexpr int kExitIo = 4;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace coopmsr::cli
