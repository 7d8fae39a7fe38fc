#pragma once

#include <ostream>

namespace dqaoa {

/// Exit status: 0 success, 1 usage error, 2 input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dqaoa
