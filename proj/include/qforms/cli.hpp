#ifndef QFORMS_CLI_HPP
#define QFORMS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qforms {

// Command-line driver; `args` is argv without the program name. Results go
// to `out`, diagnostics and usage to `err`. Returns the process exit code:
// 0 success, 1 validation error, 2 insufficient truncation.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qforms

#endif
