#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sfair::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kUsage = 2 };

// Runs the command line; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sfair::cli
