#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "decmon/formula.hpp"
#include "decmon/time.hpp"

namespace decmon {

struct TraceEvent {
  Time time = 0;
  int ap = 0;
  bool value = false;
  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

// A timed run of the whole system: right-continuous step functions per AP.
// The valuation set at an event time holds from that instant onward.
struct Trace {
  ApTable aps;
  Time horizon = 0;
  std::vector<bool> initial;        // per AP id
  std::vector<TraceEvent> events;   // sorted by (time, insertion order)

  friend bool operator==(const Trace&, const Trace&) = default;
};

// Per process, an expected mu state-change events over [0, horizon), event
// instants uniform, each flipping one uniformly chosen owned proposition.
// Event timestamps are globally distinct (collisions redrawn).
Trace generate_trace(const ApTable& aps, double mu, Time horizon, std::uint64_t seed);

std::string save_trace(const Trace& t);
Trace load_trace(const std::string& text);

}  // namespace decmon
