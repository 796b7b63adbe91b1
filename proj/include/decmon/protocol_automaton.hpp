#pragma once

#include <string>
#include <vector>

#include "decmon/automaton.hpp"
#include "decmon/boolmin.hpp"
#include "decmon/formula.hpp"

namespace decmon {

struct Literal {
  int ap = 0;
  bool positive = true;
  friend bool operator==(const Literal&, const Literal&) = default;
};

// One conjunct of a split guard, trackable independently (Tr_i).
struct ProtocolTransition {
  int id = 0;
  int source = 0;
  int target = 0;
  Term term;                       // literal mask/value over the AP bits
  std::vector<Literal> conjunct;   // same content, ap-ordered
  std::vector<int> associated;     // sorted owner process indices
};

struct ProtocolAutomaton {
  ApTable aps;
  int num_processes = 0;
  int num_locations = 0;
  int initial = 0;
  std::vector<Verdict> label;                       // per location
  std::vector<std::vector<int>> outgoing;           // location -> transition ids
  std::vector<ProtocolTransition> transitions;      // indexed by id

  const ProtocolTransition& tr(int id) const { return transitions[id]; }
};

// Removes self-loops, converts each remaining guard to a minimal
// sum-of-products, and numbers the conjuncts Tr0, Tr1, ...
// Ordering: by source location, then target location, then term.
ProtocolAutomaton split_transitions(const MonitorAutomaton& m, const ApTable& aps);

// The smallest associated process index; -1 for a constant-true conjunct.
int initial_coordinator(const ProtocolTransition& tr);

std::string to_json(const ProtocolAutomaton& pa);
std::string to_dot(const ProtocolAutomaton& pa);
std::string conjunct_to_string(const ProtocolTransition& tr, const ApTable& aps);

}  // namespace decmon
