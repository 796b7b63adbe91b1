#pragma once

#include <string>
#include <variant>
#include <vector>

#include "decmon/automaton.hpp"
#include "decmon/interval_set.hpp"
#include "decmon/time.hpp"

namespace decmon {

struct DelegateBody {
  int tr_id = 0;
  IntervalSet gpsr;
  std::vector<std::pair<int, Time>> t_lu;  // (process, time), sorted by process
};

struct AggregateBody {
  std::vector<int> trc;  // sorted tr ids
  int tr_e = -1;         // -1 when absent
  Time t_tr_e = kTimeInf;
};

struct StepStartBody {
  std::vector<int> coordinated_trs;  // sorted tr ids the recipient now coordinates
};

struct VerdictBody {
  Verdict verdict = Verdict::Unknown;
  Time at = 0;
};

// Every message identifies the step it belongs to: the step counter, the
// step's start time t_llc, and the automaton location of the step. The
// counter disambiguates successive steps that begin at the same instant.
struct Message {
  int step = 0;
  Time t_llc = 0;
  int location = 0;
  int sender = 0;
  std::variant<DelegateBody, AggregateBody, StepStartBody, VerdictBody> body;

  bool is_delegate() const { return body.index() == 0; }
  bool is_aggregate() const { return body.index() == 1; }
  bool is_step_start() const { return body.index() == 2; }
  bool is_verdict() const { return body.index() == 3; }
  const char* type_name() const;
};

// Length-prefixed single-line wire form, bit-exact across runs.
std::string serialize(const Message& m);
Message parse_message(const std::string& wire);

}  // namespace decmon
