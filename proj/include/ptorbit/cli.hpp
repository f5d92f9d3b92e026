#ifndef PTORBIT_CLI_HPP
#define PTORBIT_CLI_HPP

#include <string>
#include <vector>

namespace ptorbit {

/// The command-line entry point, callable in-process for tests.
/// Exit codes: 0 success, 1 verify-residual failure, 2 malformed config
/// or usage, 3 numerical failure.
int run_cli(const std::vector<std::string>& args);

} // namespace ptorbit

#endif
