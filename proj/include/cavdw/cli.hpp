#pragma once

#include <iosfwd>

namespace cavdw::cli {

// Exit codes: 0 success, 1 configuration error, 2 runtime or solver error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cavdw::cli
