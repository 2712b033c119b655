#pragma once

// Command-line front end. Exit codes: 0 all requested checks pass, 1 a check
// failed, 2 bad arguments or input, 3 numerical failure.

#include <iosfwd>

namespace ias::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ias::cli
