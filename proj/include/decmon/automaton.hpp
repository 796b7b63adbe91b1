#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "decmon/formula.hpp"

namespace decmon {

enum class Verdict { Top, Bottom, Unknown };

std::string to_string(Verdict v);

// Deterministic three-valued monitor automaton over the alphabet 2^AP.
// Letters are bitmasks over the AP table (bit i set <=> proposition i true).
// States labelled Top/Bottom are terminal sinks.
struct MonitorAutomaton {
  int num_aps = 0;
  int num_states = 0;
  int initial = 0;
  std::vector<Verdict> label;        // per state
  std::vector<std::vector<int>> next;  // [state][letter] -> state

  int step(int state, std::uint32_t letter) const { return next[state][letter]; }
};

// Builds the minimal monitor automaton for a core formula.
// Requires |AP| <= 12 (explicit alphabet).
MonitorAutomaton build_monitor(const Formula& f, int num_aps);

struct Monitorability {
  bool monitorable = true;       // some reachable state can still reach Top or Bottom
  std::vector<int> dead_unknown;  // reachable states from which no verdict is reachable
};

Monitorability check_monitorable(const MonitorAutomaton& m);

}  // namespace decmon
