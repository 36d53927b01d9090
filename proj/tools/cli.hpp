#ifndef DPPMARKOV_TOOLS_CLI_HPP
#define DPPMARKOV_TOOLS_CLI_HPP

#include <ostream>

namespace dppmarkov::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitCapacity = 3;
inline constexpr int kExitDegenerate = 4;

/// Runs one command line in-process. Reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dppmarkov::cli

#endif  // DPPMARKOV_TOOLS_CLI_HPP
