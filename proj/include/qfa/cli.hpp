#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qfa {

// args excludes the program name. Exit codes: 0 success, 1 verification
// failure or engine error, 2 bad arguments or input files.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfa
