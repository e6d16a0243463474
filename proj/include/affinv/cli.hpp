#ifndef AFFINV_CLI_HPP
#define AFFINV_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace affinv {

/// Dispatch a command line (without the program name) and write the JSON
/// report. Returns the process exit code: 0 success, 1 verification
/// failure, 2 usage or parse error.
int run_command(const std::vector<std::string>& args, std::ostream& out);

}  // namespace affinv

#endif
