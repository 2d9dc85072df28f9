#include "univip/timegrid.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>

#include "univip/error.hpp"

namespace univip {
namespace {

constexpr int kMaxDigits = 15;

/// value = mantissa / 10^scale
struct Decimal {
  std::int64_t mantissa = 0;
  int scale = 0;
};

std::int64_t pow10(int n) {
  std::int64_t p = 1;
  for (int i = 0; i < n; ++i) p *= 10;
  return p;
}

Decimal parse_decimal(std::string_view text) {
  const std::string original(text);
  auto bad = [&]() -> Decimal {
    fail(ErrorKind::InvalidInput, "malformed time value '" + original + "'");
  };
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) return bad();
  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Decimal d;
  bool seen_point = false;
  int digits = 0;
  for (char ch : text) {
    if (ch == '.') {
      if (seen_point) return bad();
      seen_point = true;
      continue;
    }
    if (ch < '0' || ch > '9') return bad();
    if (++digits > kMaxDigits) return bad();
    d.mantissa = d.mantissa * 10 + (ch - '0');
    if (seen_point) ++d.scale;
  }
  if (digits == 0) return bad();
  if (negative) d.mantissa = -d.mantissa;
  return d;
}

Decimal rescale(Decimal d, int scale) {
  return {d.mantissa * pow10(scale - d.scale), scale};
}

TimePoint to_point(Decimal d) {
  TimePoint p;
  p.value = static_cast<double>(d.mantissa) / static_cast<double>(pow10(d.scale));
  const std::int64_t mag = d.mantissa < 0 ? -d.mantissa : d.mantissa;
  std::string digits = std::to_string(mag);
  if (d.scale > 0) {
    if (static_cast<int>(digits.size()) <= d.scale) {
      digits.insert(0, static_cast<std::size_t>(d.scale + 1) - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(d.scale), ".");
  }
  p.label = (d.mantissa < 0 ? "-" : "") + digits;
  return p;
}

}  // namespace

std::vector<TimePoint> parse_time_list(std::string_view text) {
  std::vector<TimePoint> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    pos = comma + 1;

    const std::size_t c1 = item.find(':');
    if (c1 == std::string_view::npos) {
      out.push_back(to_point(parse_decimal(item)));
      continue;
    }
    const std::size_t c2 = item.find(':', c1 + 1);
    if (c2 == std::string_view::npos || item.find(':', c2 + 1) != std::string_view::npos) {
      fail(ErrorKind::InvalidInput, "range must be start:stop:step, got '" + std::string(item) + "'");
    }
    Decimal start = parse_decimal(item.substr(0, c1));
    Decimal stop = parse_decimal(item.substr(c1 + 1, c2 - c1 - 1));
    Decimal step = parse_decimal(item.substr(c2 + 1));
    const int scale = std::max({start.scale, stop.scale, step.scale});
    start = rescale(start, scale);
    stop = rescale(stop, scale);
    step = rescale(step, scale);
    if (step.mantissa == 0) fail(ErrorKind::InvalidInput, "range step must be nonzero");
    const std::int64_t span = stop.mantissa - start.mantissa;
    if ((span > 0 && step.mantissa < 0) || (span < 0 && step.mantissa > 0)) {
      fail(ErrorKind::InvalidInput, "range step points away from stop in '" + std::string(item) + "'");
    }
    const std::int64_t count = span / step.mantissa;
    if (count > 100000) fail(ErrorKind::InvalidInput, "range expands to too many values");
    for (std::int64_t k = 0; k <= count; ++k) {
      out.push_back(to_point({start.mantissa + k * step.mantissa, scale}));
    }
  }
  return out;
}

}  // namespace univip
