#pragma once

#include <map>
#include <optional>
#include <vector>

#include "decmon/interval_set.hpp"
#include "decmon/message.hpp"
#include "decmon/protocol_automaton.hpp"

namespace decmon {

// One location change detected and announced by a process.
struct Announcement {
  int step = 0;     // index of the step being entered
  Time at = 0;      // enabling time of the taken transition (new t_llc)
  int from = 0;
  int to = 0;
  int tr_id = 0;
};

struct MonitorOutput {
  std::vector<std::pair<int, Message>> sends;  // (recipient process, message)
  std::vector<Announcement> announcements;
  std::optional<VerdictBody> verdict;
};

// Per-transition knowledge of one process (only transitions of the current
// location whose conjunct involves this process).
struct TransitionView {
  IntervalSet gpsr;
  std::map<int, Time> t_lu;  // per associated process
  bool is_coordinator = false;
  Time scanned_to = 0;  // own-literal falsity removed over [t_llc, scanned_to)
};

class ProcessMonitor {
 public:
  // initial_valuation is indexed by AP id; only this process's entries are read.
  ProcessMonitor(const ProtocolAutomaton* pa, int index,
                 const std::vector<bool>& initial_valuation);

  // Initial evaluation at simulation start (t = 0).
  MonitorOutput begin(Time now);
  MonitorOutput on_local_change(Time now, int ap, bool value);
  MonitorOutput on_message(Time now, const Message& m);

  int index() const { return i_; }
  int location() const { return q_c_; }
  Time t_llc() const { return t_llc_; }
  int step() const { return step_; }
  const std::vector<int>& trc() const { return trc_; }
  int tr_e() const { return tr_e_; }
  Time t_tr_e() const { return t_tr_e_; }
  const TransitionView* view(int tr_id) const;
  bool halted() const { return halted_; }

 private:
  void reset_step(int step, Time t_llc, int location);
  void update(Time now, MonitorOutput& out);
  void enter_location(Time now, int target, int tr_id, MonitorOutput& out);
  void subtract_own_falsity(int tr_id, TransitionView& v, Time now);
  bool trc_contains(int tr_id) const;
  void trc_add(int tr_id);

  const ProtocolAutomaton* pa_;
  int i_;
  int q_c_;
  Time t_llc_ = 0;
  int step_ = 0;
  std::vector<int> trc_;  // sorted
  int tr_e_ = -1;
  Time t_tr_e_ = kTimeInf;
  std::map<int, TransitionView> views_;
  bool step_start_seen_ = false;
  bool pending_changed_ = false;  // TrC/Tr_e changed by a received Aggregate
  bool halted_ = false;  // terminal location announced or Verdict received

  // Owned-literal history since simulation start: change points per AP.
  std::map<int, std::vector<std::pair<Time, bool>>> history_;  // (since, value)
};

}  // namespace decmon
