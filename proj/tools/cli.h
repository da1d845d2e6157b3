#ifndef HAILCHI_TOOLS_CLI_H_
#define HAILCHI_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace hailchi {

// Runs `hailchi <args...>` and returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hailchi

#endif  // HAILCHI_TOOLS_CLI_H_
