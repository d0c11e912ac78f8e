#pragma once

#include <iosfwd>

namespace motionforge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitValidation = 2;

/// Entry point behind the `motionforge` executable. Subcommands: translate,
/// preview, chain, verify, serve. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace motionforge::cli
