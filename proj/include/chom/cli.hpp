#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace chom::cli {

enum ExitCode { ok = 0, check_failed = 1, usage = 2 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chom::cli
