#include "decmon/time.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace decmon {

Time from_units(double u) { return static_cast<Time>(std::llround(u * static_cast<double>(kTicksPerUnit))); }

double to_units(Time t) { return static_cast<double>(t) / static_cast<double>(kTicksPerUnit); }

std::string format_time(Time t) {
  if (t == kTimeInf) return "inf";
  const bool neg = t < 0;
  const Time a = neg ? -t : t;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%s%lld.%06lld", neg ? "-" : "",
                static_cast<long long>(a / kTicksPerUnit), static_cast<long long>(a % kTicksPerUnit));
  return buf;
}

Time parse_time(const std::string& text) {
  if (text == "inf") return kTimeInf;
  std::size_t pos = 0;
  bool neg = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    neg = text[pos] == '-';
    ++pos;
  }
  auto digits = [&](long long& out, std::size_t max_digits) {
    std::size_t n = 0;
    out = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9' && n < max_digits) {
      out = out * 10 + (text[pos] - '0');
      ++pos;
      ++n;
    }
    return n;
  };
  long long whole = 0;
  if (digits(whole, 18) == 0) throw std::invalid_argument("bad time literal: " + text);
  long long frac = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    std::size_t start = pos;
    digits(frac, 6);
    for (std::size_t n = pos - start; n < 6; ++n) frac *= 10;
  }
  if (pos != text.size()) throw std::invalid_argument("bad time literal: " + text);
  Time t = whole * kTicksPerUnit + frac;
  return neg ? -t : t;
}

}  // namespace decmon
