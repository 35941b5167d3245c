#include "fockweyl/report.hpp"

#include <algorithm>
#include <ostream>

#include "fockweyl/text.hpp"

namespace fockweyl::report {

void write_report(std::ostream& out, const std::vector<CheckResult>& results) {
  bool first = true;
  for (const auto& r : results) {
    if (!first) out << '\n';
    first = false;
    out << "check=" << r.check << '\n'
        << "family=" << r.family << '\n'
        << "cutoff=" << r.cutoff << '\n'
        << "sector_bound=" << r.sector_bound << '\n'
        << "metric=" << text::shortest(r.metric) << '\n';
    for (const auto& [k, v] : r.details) out << k << '=' << v << '\n';
    out << "verdict=" << (r.pass ? "pass" : "fail") << '\n';
  }
}

bool all_pass(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
}

std::string join(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + text::shortest(values[i]);
  return s;
}

std::string join(const std::vector<int>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + std::to_string(values[i]);
  return s;
}

}  // namespace fockweyl::report
