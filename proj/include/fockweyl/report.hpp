// Check results and the key=value report format: one block per check,
// blocks separated by blank lines.

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace fockweyl::report {

struct CheckResult {
  std::string check;
  std::string family;
  int cutoff = 0;
  int sector_bound = 0;
  double metric = 0.0;
  bool pass = false;
  /// Extra key=value lines written after the fixed keys, in order.
  std::vector<std::pair<std::string, std::string>> details;
};

void write_report(std::ostream& out, const std::vector<CheckResult>& results);

bool all_pass(const std::vector<CheckResult>& results);

/// Comma-joined shortest round-trip decimals.
std::string join(const std::vector<double>& values);
std::string join(const std::vector<int>& values);

}  // namespace fockweyl::report
