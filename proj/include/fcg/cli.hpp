#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fcg::cli {

enum ExitCode : int {
    kOk = 0,
    kIncoherent = 1,
    kUsage = 2,
    kRuntime = 3,
};

// Runs one command line (argv[0] is the program name) and returns the exit
// code. Normal output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "a:b:step", a single number, or a comma-separated mix of both.
// Throws InvalidArgument on malformed input.
[[nodiscard]] std::vector<double> parse_range(const std::string& text);

} // namespace fcg::cli
