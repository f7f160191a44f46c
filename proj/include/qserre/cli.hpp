#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qserre {

/// Exit codes: 0 every check passed, 1 some check failed, 2 usage or configuration error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Same, with args excluding the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qserre
