#pragma once

#include <iosfwd>
#include <vector>

namespace agg {

/// Entry point behind the `hingeagg` binary. Returns the process exit code:
/// 0 success, 2 usage/config error, 3 numeric failure.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace agg
