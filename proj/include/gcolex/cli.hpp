#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gcolex::cli {

// Exit codes: 0 success, 1 failed verification, 2 invalid input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace gcolex::cli
