#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace renyi::cli {

// Full command-line front end. Returns the process exit code: 0 on success,
// 1 for domain errors (machine-readable JSON on the error stream) and for
// verification runs with violations, 2 for usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace renyi::cli
