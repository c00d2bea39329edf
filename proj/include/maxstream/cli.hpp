#pragma once

#include <iosfwd>

namespace maxstream::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// The `maxstream` command line. Output goes to `out` (or --out); diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace maxstream::cli
