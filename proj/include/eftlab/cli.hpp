#pragma once

#include <string>
#include <vector>

namespace eftlab {

/// Batch front end. args excludes the program name. Exit codes: 0 success,
/// 1 precondition/usage error, 2 numerical failure, 3 acceptance failure
/// (verify only).
int run_command(const std::vector<std::string>& args);

}  // namespace eftlab
