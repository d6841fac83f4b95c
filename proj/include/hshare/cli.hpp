#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hshare::cli {

enum ExitCode { Ok = 0, Usage = 1, HypothesisFailure = 2, Inconsistency = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hshare::cli
