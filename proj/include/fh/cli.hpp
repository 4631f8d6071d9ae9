#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fh::cli {

// Full command dispatch; returns the process exit code (0 success, 1
// property failure, 2 usage/parse error). The fh binary forwards argv here;
// tests call it directly with captured streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fh::cli
