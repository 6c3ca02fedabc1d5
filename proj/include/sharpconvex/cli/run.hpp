#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sharpconvex::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the sharpconvex command. args excludes the program name.
// The report goes to --out (or `out` when absent); diagnostics and a
// one-line summary go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sharpconvex::cli
