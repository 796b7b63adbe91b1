#include "decmon/sim.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <sstream>

namespace decmon {

namespace {

struct Ev {
  Time due;
  int prio;  // 0 = LocalChange, 1 = Deliver — changes apply before deliveries
  long seq;
  int proc;
  // LocalChange
  int ap = -1;
  bool value = false;
  // Deliver
  Message msg;

  bool operator>(const Ev& o) const {
    if (due != o.due) return due > o.due;
    if (prio != o.prio) return prio > o.prio;
    return seq > o.seq;
  }
};

void log_line(std::string* sink, const std::string& line) {
  if (sink) {
    *sink += line;
    *sink += '\n';
  }
}

}  // namespace

RunResult run_simulation(const ProtocolAutomaton& pa, const Trace& trace,
                         const SimConfig& cfg) {
  RunResult res;
  res.message_counts = {{"Delegate", 0}, {"Aggregate", 0}, {"StepStart", 0}};

  std::vector<ProcessMonitor> monitors;
  monitors.reserve(pa.num_processes);
  for (int p = 0; p < pa.num_processes; ++p) monitors.emplace_back(&pa, p, trace.initial);

  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<Time> delay_dist(cfg.delay_lo, cfg.delay_hi - 1);

  std::priority_queue<Ev, std::vector<Ev>, std::greater<Ev>> queue;
  long seq = 0;
  for (const TraceEvent& e : trace.events) {
    Ev ev;
    ev.due = e.time;
    ev.prio = 0;
    ev.seq = seq++;
    ev.proc = trace.aps[e.ap].owner;
    ev.ap = e.ap;
    ev.value = e.value;
    queue.push(ev);
  }

  std::map<int, LocationChange> changes_by_step;
  bool done = false;

  auto absorb = [&](Time now, const MonitorOutput& out) {
    for (const auto& [to, msg] : out.sends) {
      log_line(cfg.event_log, "{\"t\":\"" + format_time(now) + "\",\"ev\":\"send\",\"from\":" +
                                  std::to_string(msg.sender) + ",\"to\":" + std::to_string(to) +
                                  ",\"msg\":\"" + serialize(msg) + "\"}");
      if (!msg.is_verdict()) {
        ++res.message_counts[msg.type_name()];
        ++res.total_messages;
      }
      Ev ev;
      ev.due = now + delay_dist(rng);
      ev.prio = 1;
      ev.seq = seq++;
      ev.proc = to;
      ev.msg = msg;
      queue.push(ev);
    }
    for (const Announcement& a : out.announcements) {
      log_line(cfg.event_log,
               "{\"t\":\"" + format_time(now) + "\",\"ev\":\"announce\",\"step\":" +
                   std::to_string(a.step) + ",\"at\":\"" + format_time(a.at) +
                   "\",\"from\":" + std::to_string(a.from) + ",\"to\":" + std::to_string(a.to) +
                   ",\"tr\":" + std::to_string(a.tr_id) + "}");
      changes_by_step.emplace(a.step, LocationChange{a.at, a.from, a.to, a.tr_id});
    }
    if (out.verdict && !done) {
      res.verdict = out.verdict->verdict;
      res.verdict_time = out.verdict->at;
      res.emission_time = now;
      log_line(cfg.event_log, "{\"t\":\"" + format_time(now) + "\",\"ev\":\"verdict\",\"verdict\":\"" +
                                  to_string(out.verdict->verdict) + "\",\"at\":\"" +
                                  format_time(out.verdict->at) + "\"}");
      done = true;
    }
  };

  for (int p = 0; p < pa.num_processes && !done; ++p) absorb(0, monitors[p].begin(0));

  while (!done && !queue.empty()) {
    Ev ev = queue.top();
    queue.pop();
    if (ev.prio == 0) {
      log_line(cfg.event_log,
               "{\"t\":\"" + format_time(ev.due) + "\",\"ev\":\"change\",\"p\":" +
                   std::to_string(ev.proc) + ",\"prop\":\"" + trace.aps[ev.ap].name +
                   "\",\"value\":" + (ev.value ? "true" : "false") + "}");
      absorb(ev.due, monitors[ev.proc].on_local_change(ev.due, ev.ap, ev.value));
    } else {
      log_line(cfg.event_log, "{\"t\":\"" + format_time(ev.due) + "\",\"ev\":\"recv\",\"to\":" +
                                  std::to_string(ev.proc) + ",\"msg\":\"" + serialize(ev.msg) +
                                  "\"}");
      absorb(ev.due, monitors[ev.proc].on_message(ev.due, ev.msg));
    }
  }

  for (auto& [step, ch] : changes_by_step) res.location_changes.push_back(ch);
  return res;
}

RunResult oracle_evaluate(const ProtocolAutomaton& pa, const Trace& trace) {
  RunResult res;

  // Piecewise-constant letter timeline.
  std::uint32_t letter = 0;
  for (std::size_t ap = 0; ap < trace.initial.size(); ++ap)
    if (trace.initial[ap]) letter |= 1u << ap;
  std::vector<std::pair<Time, std::uint32_t>> segments{{0, letter}};
  for (const TraceEvent& e : trace.events) {
    if (e.value)
      letter |= 1u << e.ap;
    else
      letter &= ~(1u << e.ap);
    if (e.time == segments.back().first)
      segments.back().second = letter;
    else
      segments.emplace_back(e.time, letter);
  }

  int cur = pa.initial;
  Time t_llc = 0;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (segments[s].first >= trace.horizon) break;
    for (;;) {
      if (pa.label[cur] != Verdict::Unknown) break;
      int taken = -1;
      for (int id : pa.outgoing[cur]) {
        if (pa.tr(id).term.matches(segments[s].second)) {
          taken = id;
          break;  // outgoing ids ascend; lowest id wins ties
        }
      }
      if (taken < 0) break;
      Time enabling = std::max(segments[s].first, t_llc);
      const ProtocolTransition& tr = pa.tr(taken);
      res.location_changes.push_back({enabling, tr.source, tr.target, taken});
      cur = tr.target;
      t_llc = enabling;
      if (pa.label[cur] != Verdict::Unknown) {
        res.verdict = pa.label[cur];
        res.verdict_time = t_llc;
        res.emission_time = t_llc;
        return res;
      }
    }
    if (pa.label[cur] != Verdict::Unknown) break;
  }
  return res;
}

}  // namespace decmon
