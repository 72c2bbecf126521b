#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chorefair::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitLimit = 3;

// Runs one command line (without the program name). Primary output goes to
// `out`; errors are written to `err` as a JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chorefair::cli
