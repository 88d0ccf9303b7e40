#pragma once

#include <string>
#include <vector>

namespace nls {

// Dispatcher behind the nlscollapse binary; factored out for tests.
// Exit codes: 0 success, 1 usage error, 2 domain error, 3 inconclusive scan.
int run_cli(const std::vector<std::string>& args);

}  // namespace nls
