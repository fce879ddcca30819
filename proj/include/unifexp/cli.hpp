#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace unifexp::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kDomainFailure = 1;  // domain errors, failing checks, oracle failures
inline constexpr int kUsage = 2;
inline constexpr int kIntegrity = 3;

// Runs one command line (program name excluded) and returns its exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unifexp::cli
