#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace seedgrow::cli {

enum ExitCode : int {
    kOk = 0,
    kIoError = 1,
    kInvalidParameters = 2,
    kPipelineFailure = 3,
};

/// Runs the command line `args` (args[0] is the program name). Facts go to
/// `out` as key=value lines, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seedgrow::cli
