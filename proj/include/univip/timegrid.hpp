#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace univip {

struct TimePoint {
  double value = 0.0;
  /// Decimal text of the value at the grid's precision, e.g. "-0.50".
  std::string label;
};

/// Parses a comma-separated list whose entries are decimals or inclusive
/// ranges "start:stop:step". Ranges are expanded in exact decimal arithmetic,
/// so "-0.25:-3.00:-0.25" yields exactly the twelve values -0.25 ... -3.00.
/// Throws InvalidInput on malformed text, zero steps, or steps pointing away
/// from the stop value.
std::vector<TimePoint> parse_time_list(std::string_view text);

}  // namespace univip
