#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace itp::cli {

// Exit codes: 0 holds / answered, 1 property fails, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace itp::cli
