#pragma once

#include <iosfwd>

namespace asw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Parses argv and runs one subcommand. Records go to --output or `out`,
/// messages to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace asw::cli
