#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ptqsd::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInfeasible = 2,
    kVerificationFailed = 3,
};

// Runs the command line (args[0] is the program name). Documents go to out,
// diagnostics to err; "--input -" reads from in.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace ptqsd::cli
