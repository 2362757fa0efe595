#pragma once

namespace pecwe {

/// Full command-line entry point; returns the process exit code.
/// 0 success, 1 infrastructure or feed failure, 2 usage or precondition
/// error.
int run_cli(int argc, const char* const* argv);

}  // namespace pecwe
