#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gks::cli {

// Runs one invocation. Exit code 0: every requested check passed;
// 1: a verification failed; 2: usage or format error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gks::cli
