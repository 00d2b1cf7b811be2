#ifndef TORVAN_CLI_HPP
#define TORVAN_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace torvan {

// Runs one CLI invocation (args exclude the program name) and returns the
// process exit code: 0 success / verdict true, 1 verdict false, 2 usage or
// validation error, 3 internal invariant violation.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace torvan

#endif
