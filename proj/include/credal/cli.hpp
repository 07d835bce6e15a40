#pragma once

// Command-line front end. Exit statuses: 0 success, 1 verification found
// violations, 2 input error, 3 solver error.

#include <ostream>

namespace credal {

inline constexpr const char* kArtifactVersion = "0.1.0";

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace credal
