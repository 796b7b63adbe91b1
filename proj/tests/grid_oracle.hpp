#pragma once

#include <vector>

#include "decmon/interval_set.hpp"

namespace gridref {

// Reference model for interval sets: an explicit bitmap over a 0.01-unit
// grid on [0, kSpanUnits), plus the constant membership value beyond the
// span. All test endpoints are grid-aligned, so this model is exact.
inline constexpr long kSpanUnits = 1000;
inline constexpr decmon::Time kGridStep = decmon::kTicksPerUnit / 100;
inline constexpr long kCells = kSpanUnits * 100;

struct GridSet {
  std::vector<bool> cell = std::vector<bool>(kCells, false);
  bool tail = false;  // membership at and beyond kSpanUnits

  static GridSet interval(decmon::Time lo, decmon::Time hi) {
    GridSet g;
    for (long c = 0; c < kCells; ++c) {
      decmon::Time t = c * kGridStep;
      g.cell[c] = t >= lo && t < hi;
    }
    g.tail = hi == decmon::kTimeInf;  // test endpoints never exceed the span
    return g;
  }

  GridSet intersect(const GridSet& o) const { return zip(o, [](bool a, bool b) { return a && b; }); }
  GridSet unite(const GridSet& o) const { return zip(o, [](bool a, bool b) { return a || b; }); }
  GridSet subtract(const GridSet& o) const { return zip(o, [](bool a, bool b) { return a && !b; }); }

  GridSet complement() const {
    GridSet g;
    for (long c = 0; c < kCells; ++c) g.cell[c] = !cell[c];
    g.tail = !tail;
    return g;
  }

  GridSet restrict_before(decmon::Time t) const {
    GridSet g = *this;
    for (long c = 0; c < kCells; ++c)
      if (c * kGridStep >= t) g.cell[c] = false;
    if (t != decmon::kTimeInf) g.tail = false;
    return g;
  }

  bool contains(decmon::Time t) const {
    if (t >= kCells * kGridStep) return tail;
    return cell[t / kGridStep];  // t is grid-aligned in tests
  }

  template <typename F>
  GridSet zip(const GridSet& o, F f) const {
    GridSet g;
    for (long c = 0; c < kCells; ++c) g.cell[c] = f(cell[c], o.cell[c]);
    g.tail = f(tail, o.tail);
    return g;
  }
};

}  // namespace gridref
