#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace appell::cli {

enum ExitCode : int {
    exit_pass = 0,
    exit_fail = 1,
    exit_usage = 2,
};

/// Parses "RE+IMi", "RE-IMi", "RE", "IMi", "i" and "-i" (a trailing j is
/// also accepted). Throws std::invalid_argument on anything else.
std::complex<double> parse_complex(std::string_view text);

/// "%.15g%+.15gi" formatting used for every complex value the tool prints.
std::string format_complex(std::complex<double> z);

/// Runs appell_kit with args (without the program name). Reports go to out
/// (or to --out FILE), diagnostics to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace appell::cli
