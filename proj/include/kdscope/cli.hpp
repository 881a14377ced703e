#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kdscope::cli {

/// Runs the kdscope command line. Exit codes: 0 success, 1 validation error,
/// 2 usage error. Artifacts go to --out when given, otherwise to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kdscope::cli
