#pragma once

#include <string>
#include <vector>

namespace gll {

// Exit codes: 0 success (all asserted checks pass), 1 check failure,
// 2 usage error.
int cli_run(const std::vector<std::string>& args);

}  // namespace gll
