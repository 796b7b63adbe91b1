#pragma once

#include <cstdint>
#include <limits>
#include <string>

namespace decmon {

// Global-clock instants on an integer microtick lattice.
// 1 time unit == 1,000,000 microticks, so values like 2.1 are exact.
using Time = std::int64_t;

inline constexpr Time kTicksPerUnit = 1'000'000;
inline constexpr Time kTick = 1;
inline constexpr Time kTimeInf = std::numeric_limits<Time>::max();

constexpr Time units(long long whole, long long micro = 0) {
  return whole * kTicksPerUnit + micro;
}

// Rounds to the nearest microtick.
Time from_units(double u);
double to_units(Time t);

// Decimal time units with 6 fractional digits; kTimeInf renders as "inf".
std::string format_time(Time t);

// Inverse of format_time; also accepts plain integers ("5" == 5.000000).
Time parse_time(const std::string& text);

}  // namespace decmon
