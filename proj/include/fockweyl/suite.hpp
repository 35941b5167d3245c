// The calibrated verification suite behind `verify-all`.

#pragma once

#include <string_view>
#include <vector>

#include "fockweyl/report.hpp"

namespace fockweyl::suite {

/// quick: cutoffs <= 16 and lighter grids; full: the acceptance schedules.
enum class Level { quick, full };

Level parse_level(std::string_view name);

/// Runs every check in a fixed order. Random inputs come from fixed seeds, so
/// repeated runs give identical results.
std::vector<report::CheckResult> run_suite(Level level);

}  // namespace fockweyl::suite
