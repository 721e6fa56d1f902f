#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rbw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;
inline constexpr int kExitInternal = 70;

/// `args` excludes the program name. `arrow` exits 0 (arrowed), 1 (not arrowed) or
/// 2 (indeterminate); other subcommands 0, or the codes above on failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace rbw::cli
