#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trilap::cli {

/// Entry point shared by the binary and the tests. Exit-code contract:
/// 0 success, 1 identity/invariant suite failure, 2 usage/IO/schema errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace trilap::cli
