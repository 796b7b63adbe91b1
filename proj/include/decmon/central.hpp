#pragma once

#include "decmon/sim.hpp"

namespace decmon {

// Centralized baseline: every process reports each local state change to a
// central monitor, which reorders updates by their global-clock timestamps
// and advances the monitor automaton over the reconstructed global state.
RunResult run_centralized(const ProtocolAutomaton& pa, const Trace& trace,
                          const SimConfig& cfg);

}  // namespace decmon
