#pragma once

#include <string>
#include <vector>

namespace barnesbeta {

// Runs one CLI invocation. Exit codes: 0 success / all checks passed,
// 2 domain error, 3 accuracy or threshold failure, 64 usage error.
int cli_run(const std::vector<std::string>& args);

}  // namespace barnesbeta
