#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracdim {

inline constexpr const char* kSchemaVersion = "fracdim-output/1";

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
  kExitResource = 3,
};

// Runs the command line (without the program name); returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// 12 significant digits, shortest form.
std::string format_number(double x);

}  // namespace fracdim
