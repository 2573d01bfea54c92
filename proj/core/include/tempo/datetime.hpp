#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace tempo {

// All instants in this library are UTC with second precision.
using utc_seconds = std::chrono::sys_seconds;
using utc_day = std::chrono::sys_days;

utc_day day_of(utc_seconds t);

// Wayback 14-digit stamps: YYYYMMDDhhmmss. Truncated stamps (an even number
// of digits, at least 4) are padded: missing month/day default to 01,
// missing time-of-day to midnight. Returns nothing on anything else or on
// out-of-range components.
std::optional<utc_seconds> parse_stamp14(std::string_view s);

// Always emits the full 14 digits.
std::string format_stamp14(utc_seconds t);

// RFC 1123 dates as used in link-format TimeMaps, e.g.
// "Fri, 24 Apr 2015 15:03:04 GMT". The weekday prefix is optional and
// ignored when present.
std::optional<utc_seconds> parse_rfc1123(std::string_view s);
std::string format_rfc1123(utc_seconds t);

// "YYYY-MM-DD" or "YYYY-MM-DDThh:mm:ssZ". Date-only means midnight UTC.
std::optional<utc_seconds> parse_iso8601(std::string_view s);
std::string format_iso8601(utc_seconds t);
std::string format_iso_date(utc_day d);

}  // namespace tempo
