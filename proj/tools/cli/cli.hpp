#pragma once

#include <iosfwd>

namespace pestpolicy::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,         // malformed command line
    kConfigError = 2,   // unreadable or invalid configuration
    kIoError = 3,       // output could not be written
    kStepTooLarge = 4,  // integrator overshoot; shrink dt
};

/// Entry point shared by main() and the tests. Data goes to `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pestpolicy::cli
