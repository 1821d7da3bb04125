#pragma once

#include <string>
#include <vector>

namespace tps {

/// Runs the command-line tool on the given arguments (program name excluded).
/// stdout/stderr payloads are returned through `out` and `err`; the return
/// value is the process exit code: 0 success, 1 runtime failure (failed
/// invariant, gauge singularity, empty result), 2 usage error.
int run_cli(const std::vector<std::string>& args, std::string& out, std::string& err);

}  // namespace tps
