#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fracdim {

struct VerifyOptions {
  std::string only;  // empty: every group
  bool greedy_off_by_one = false;
  unsigned workers = 1;
  std::uint64_t seed = 0x5eed;
};

struct CheckResult {
  std::string group;
  std::string name;
  bool passed = false;
  std::string detail;
  // JSON text describing the failing input, empty on success.
  std::string counterexample;
};

const std::vector<std::string>& verify_groups();

std::vector<CheckResult> run_verify_suite(const VerifyOptions& options);

}  // namespace fracdim
