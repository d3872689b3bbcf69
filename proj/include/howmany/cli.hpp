#pragma once

#include <ostream>

namespace howmany {

inline constexpr const char* kVersion = "0.1.0";

/// Entry point of the `howmany` tool. Returns 0 on success, 2 on usage
/// errors (message on `err`), and 1 on runtime errors (a single
/// "error: ..." line on `err`).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace howmany
