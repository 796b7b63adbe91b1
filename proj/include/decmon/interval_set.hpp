#pragma once

#include <optional>
#include <string>
#include <vector>

#include "decmon/time.hpp"

namespace decmon {

// A finite union of disjoint, non-adjacent half-open intervals [lo, hi),
// kept in canonical sorted form. hi == kTimeInf encodes an unbounded tail.
// This is the carrier type for satisfaction ranges (sr / gpsr).
class IntervalSet {
 public:
  struct Interval {
    Time lo;
    Time hi;  // exclusive; kTimeInf for the unbounded tail
    friend bool operator==(const Interval&, const Interval&) = default;
  };

  IntervalSet() = default;

  static IntervalSet empty() { return {}; }
  static IntervalSet interval(Time lo, Time hi);
  static IntervalSet from(Time lo) { return interval(lo, kTimeInf); }

  bool is_empty() const { return ivs_.empty(); }
  bool contains(Time t) const;
  std::optional<Time> min_point() const;

  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet subtract(const IntervalSet& other) const;
  // this ∩ [0, t)
  IntervalSet restrict_before(Time t) const;
  // [0, inf) \ this
  IntervalSet complement() const;

  const std::vector<Interval>& intervals() const { return ivs_; }

  // In-place removal of [lo, hi); avoids churn on the hot monitor path.
  void remove(Time lo, Time hi);

  // "[3.000000,4.000000)u[5.000000,6.000000)", "[16.000000,inf)", "{}"
  std::string to_string() const;
  // Same shape but with raw microtick integers; used on the wire.
  std::string to_wire() const;
  static IntervalSet from_wire(const std::string& text);

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> ivs_;
};

}  // namespace decmon
