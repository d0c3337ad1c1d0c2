#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace crawler::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;

// crawl-opc <simulate|sweep|hb|opc> --config PATH [--omega F] [--cycles N]
//           [--out DIR] [--svg]
// `--config default` selects the built-in case-study configuration.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crawler::cli
