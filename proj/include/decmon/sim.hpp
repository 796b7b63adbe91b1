#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "decmon/monitor.hpp"
#include "decmon/protocol_automaton.hpp"
#include "decmon/trace.hpp"

namespace decmon {

struct LocationChange {
  Time time = 0;  // the transition's enabling time (new t_llc)
  int from = 0;
  int to = 0;
  int tr_id = 0;
  friend bool operator==(const LocationChange&, const LocationChange&) = default;
};

struct RunResult {
  Verdict verdict = Verdict::Unknown;
  Time verdict_time = 0;    // meaningful iff verdict != Unknown
  Time emission_time = 0;   // wall time the Verdict was announced
  std::vector<LocationChange> location_changes;
  std::map<std::string, long> message_counts;  // Delegate/Aggregate/StepStart
  long total_messages = 0;                     // Verdict broadcast not counted
};

struct SimConfig {
  Time delay_lo = 0;
  Time delay_hi = 2 * kTicksPerUnit;  // exclusive; uniform per message
  std::uint64_t seed = 0;
  std::string* event_log = nullptr;  // JSON-lines sink, optional
};

// Deterministic discrete-event run of the decentralized monitors.
RunResult run_simulation(const ProtocolAutomaton& pa, const Trace& trace,
                         const SimConfig& cfg);

// Offline ground truth: walks the globally-ordered piecewise-constant state.
RunResult oracle_evaluate(const ProtocolAutomaton& pa, const Trace& trace);

}  // namespace decmon
