#include "decmon/interval_set.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace decmon {

IntervalSet IntervalSet::interval(Time lo, Time hi) {
  IntervalSet s;
  if (lo < hi) s.ivs_.push_back({lo, hi});
  return s;
}

bool IntervalSet::contains(Time t) const {
  auto it = std::upper_bound(ivs_.begin(), ivs_.end(), t,
                             [](Time v, const Interval& iv) { return v < iv.lo; });
  if (it == ivs_.begin()) return false;
  --it;
  return t < it->hi;
}

std::optional<Time> IntervalSet::min_point() const {
  if (ivs_.empty()) return std::nullopt;
  return ivs_.front().lo;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  IntervalSet out;
  std::size_t i = 0, j = 0;
  while (i < ivs_.size() && j < other.ivs_.size()) {
    const Interval& a = ivs_[i];
    const Interval& b = other.ivs_[j];
    Time lo = std::max(a.lo, b.lo);
    Time hi = std::min(a.hi, b.hi);
    if (lo < hi) out.ivs_.push_back({lo, hi});
    if (a.hi < b.hi)
      ++i;
    else
      ++j;
  }
  return out;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  IntervalSet out;
  std::size_t i = 0, j = 0;
  while (i < ivs_.size() || j < other.ivs_.size()) {
    Interval next;
    if (j == other.ivs_.size() || (i < ivs_.size() && ivs_[i].lo <= other.ivs_[j].lo))
      next = ivs_[i++];
    else
      next = other.ivs_[j++];
    if (!out.ivs_.empty() && next.lo <= out.ivs_.back().hi)
      out.ivs_.back().hi = std::max(out.ivs_.back().hi, next.hi);
    else
      out.ivs_.push_back(next);
  }
  return out;
}

IntervalSet IntervalSet::subtract(const IntervalSet& other) const {
  IntervalSet out;
  for (const Interval& a : ivs_) {
    auto it = std::partition_point(other.ivs_.begin(), other.ivs_.end(),
                                   [&](const Interval& b) { return b.hi <= a.lo; });
    Time lo = a.lo;
    for (; it != other.ivs_.end() && it->lo < a.hi; ++it) {
      if (it->lo > lo) out.ivs_.push_back({lo, it->lo});
      lo = std::max(lo, it->hi);
      if (lo >= a.hi) break;
    }
    if (lo < a.hi) out.ivs_.push_back({lo, a.hi});
  }
  return out;
}

IntervalSet IntervalSet::restrict_before(Time t) const {
  IntervalSet out;
  for (const Interval& a : ivs_) {
    if (a.lo >= t) break;
    out.ivs_.push_back({a.lo, std::min(a.hi, t)});
  }
  return out;
}

IntervalSet IntervalSet::complement() const {
  IntervalSet out;
  Time cursor = 0;
  for (const Interval& a : ivs_) {
    if (a.lo > cursor) out.ivs_.push_back({cursor, a.lo});
    cursor = a.hi;
    if (cursor == kTimeInf) return out;
  }
  out.ivs_.push_back({cursor, kTimeInf});
  return out;
}

void IntervalSet::remove(Time lo, Time hi) {
  if (lo >= hi || ivs_.empty()) return;
  auto first = std::partition_point(ivs_.begin(), ivs_.end(),
                                    [&](const Interval& iv) { return iv.hi <= lo; });
  if (first == ivs_.end() || first->lo >= hi) return;
  std::vector<Interval> pieces;
  auto it = first;
  for (; it != ivs_.end() && it->lo < hi; ++it) {
    if (it->lo < lo) pieces.push_back({it->lo, lo});
    if (it->hi > hi) pieces.push_back({hi, it->hi});
  }
  auto pos = ivs_.erase(first, it);
  ivs_.insert(pos, pieces.begin(), pieces.end());
}

std::string IntervalSet::to_string() const {
  if (ivs_.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < ivs_.size(); ++i) {
    if (i) out += "u";
    out += "[" + format_time(ivs_[i].lo) + "," + format_time(ivs_[i].hi) + ")";
  }
  return out;
}

std::string IntervalSet::to_wire() const {
  if (ivs_.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < ivs_.size(); ++i) {
    if (i) out += "u";
    out += "[" + std::to_string(ivs_[i].lo) + ",";
    out += ivs_[i].hi == kTimeInf ? "inf" : std::to_string(ivs_[i].hi);
    out += ")";
  }
  return out;
}

IntervalSet IntervalSet::from_wire(const std::string& text) {
  IntervalSet out;
  if (text == "{}") return out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == 'u') ++pos;
    if (pos >= text.size() || text[pos] != '[') throw std::invalid_argument("bad interval set: " + text);
    ++pos;
    std::size_t comma = text.find(',', pos);
    std::size_t close = text.find(')', pos);
    if (comma == std::string::npos || close == std::string::npos || comma > close)
      throw std::invalid_argument("bad interval set: " + text);
    Time lo = std::stoll(text.substr(pos, comma - pos));
    std::string hi_s = text.substr(comma + 1, close - comma - 1);
    Time hi = hi_s == "inf" ? kTimeInf : std::stoll(hi_s);
    out.ivs_.push_back({lo, hi});
    pos = close + 1;
  }
  return out;
}

}  // namespace decmon
