#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "decmon/monitor.hpp"

using namespace decmon;

namespace {

ProtocolAutomaton split(const char* text, const ApTable& aps) {
  MonitorAutomaton m =
      build_monitor(parse_ltl(text, aps), static_cast<int>(aps.size()));
  return split_transitions(m, aps);
}

using Lu = std::vector<std::pair<int, Time>>;

const DelegateBody& delegate_body(const Message& m) {
  REQUIRE(m.is_delegate());
  return std::get<DelegateBody>(m.body);
}

}  // namespace

// The four-process chain for a single conjunct a&b&c&d: seven Delegate hops,
// ending with the last process announcing enabling time t=16.
TEST_CASE("delegation chain detects enabling at 16") {
  ApTable aps = {{"a", 0}, {"b", 1}, {"c", 2}, {"d", 3}};
  ProtocolAutomaton pa = split("<>(a & b & c & d)", aps);
  REQUIRE(pa.outgoing[pa.initial].size() == 1);
  int trid = pa.outgoing[pa.initial][0];
  REQUIRE(pa.tr(trid).associated == std::vector<int>{0, 1, 2, 3});
  CHECK(initial_coordinator(pa.tr(trid)) == 0);
  int top = pa.tr(trid).target;
  REQUIRE(pa.label[top] == Verdict::Top);

  std::vector<bool> init(4, false);
  ProcessMonitor p0(&pa, 0, init), p1(&pa, 1, init), p2(&pa, 2, init),
      p3(&pa, 3, init);
  for (ProcessMonitor* p : {&p0, &p1, &p2, &p3}) {
    MonitorOutput o = p->begin(0);
    CHECK(o.sends.empty());
    CHECK(o.announcements.empty());
    CHECK(!o.verdict);
  }

  // t=5: a rises; the initial coordinator asks the next process.
  MonitorOutput o = p0.on_local_change(units(5), 0, true);
  REQUIRE(o.sends.size() == 1);
  CHECK(o.sends[0].first == 1);
  const Message& d1 = o.sends[0].second;
  CHECK(d1.step == 0);
  CHECK(d1.t_llc == 0);
  CHECK(d1.location == pa.initial);
  CHECK(d1.sender == 0);
  CHECK(delegate_body(d1).tr_id == trid);
  CHECK(delegate_body(d1).gpsr.to_string() == "[5.000000,inf)");
  CHECK(delegate_body(d1).t_lu ==
        Lu{{0, units(5)}, {1, -kTick}, {2, -kTick}, {3, -kTick}});

  // t=6: b is still false, so the range below now is ruled out and the new
  // coordinator waits for its own literal.
  o = p1.on_message(units(6), d1);
  CHECK(o.sends.empty());
  const TransitionView* v = p1.view(trid);
  REQUIRE(v);
  CHECK(v->is_coordinator);
  CHECK(v->gpsr.to_string() == "[6.000001,inf)");
  CHECK(v->t_lu.at(0) == units(5));
  CHECK(v->t_lu.at(1) == units(6));

  // t=8: b rises and the chain continues to the least-recently-heard process.
  o = p1.on_local_change(units(8), 1, true);
  REQUIRE(o.sends.size() == 1);
  CHECK(o.sends[0].first == 2);
  const Message d2 = o.sends[0].second;
  CHECK(delegate_body(d2).gpsr.to_string() == "[8.000000,inf)");
  CHECK(delegate_body(d2).t_lu ==
        Lu{{0, units(5)}, {1, units(8)}, {2, -kTick}, {3, -kTick}});

  CHECK(p2.on_local_change(units(8), 2, true).sends.empty());
  o = p2.on_message(units(9), d2);
  REQUIRE(o.sends.size() == 1);
  CHECK(o.sends[0].first == 3);
  const Message d3 = o.sends[0].second;
  CHECK(delegate_body(d3).gpsr.to_string() == "[8.000000,inf)");
  CHECK(delegate_body(d3).t_lu ==
        Lu{{0, units(5)}, {1, units(8)}, {2, units(9)}, {3, -kTick}});

  CHECK(p3.on_local_change(units(9), 3, true).sends.empty());
  o = p3.on_message(units(10), d3);
  REQUIRE(o.sends.size() == 1);
  CHECK(o.sends[0].first == 0);
  const Message d4 = o.sends[0].second;
  CHECK(delegate_body(d4).gpsr.to_string() == "[9.000000,inf)");
  CHECK(delegate_body(d4).t_lu ==
        Lu{{0, units(5)}, {1, units(8)}, {2, units(9)}, {3, units(10)}});

  // a fell at t=9, so when the token returns at t=11 the whole known past is
  // excluded and p0 holds coordination silently.
  CHECK(p0.on_local_change(units(9), 0, false).sends.empty());
  o = p0.on_message(units(11), d4);
  CHECK(o.sends.empty());
  v = p0.view(trid);
  REQUIRE(v);
  CHECK(v->is_coordinator);
  CHECK(v->gpsr.to_string() == "[11.000001,inf)");
  CHECK(v->t_lu.at(0) == units(11));

  // t=16: a rises again and a second round begins.
  o = p0.on_local_change(units(16), 0, true);
  REQUIRE(o.sends.size() == 1);
  CHECK(o.sends[0].first == 1);
  const Message d5 = o.sends[0].second;
  CHECK(delegate_body(d5).gpsr.to_string() == "[16.000000,inf)");
  CHECK(delegate_body(d5).t_lu ==
        Lu{{0, units(16)}, {1, units(8)}, {2, units(9)}, {3, units(10)}});

  o = p1.on_message(units(19), d5);
  REQUIRE(o.sends.size() == 1);
  CHECK(o.sends[0].first == 2);
  const Message d6 = o.sends[0].second;
  CHECK(delegate_body(d6).gpsr.to_string() == "[16.000000,inf)");
  CHECK(delegate_body(d6).t_lu ==
        Lu{{0, units(16)}, {1, units(19)}, {2, units(9)}, {3, units(10)}});

  CHECK(p2.on_local_change(units(18), 2, false).sends.empty());
  CHECK(p2.on_local_change(units(19), 2, true).sends.empty());
  CHECK(p2.on_local_change(units(20), 2, false).sends.empty());
  o = p2.on_message(units(20), d6);
  REQUIRE(o.sends.size() == 1);
  CHECK(o.sends[0].first == 3);
  const Message d7 = o.sends[0].second;
  CHECK(delegate_body(d7).gpsr.to_string() ==
        "[16.000000,18.000000)u[19.000000,20.000000)u[20.000001,inf)");
  CHECK(delegate_body(d7).t_lu ==
        Lu{{0, units(16)}, {1, units(19)}, {2, units(20)}, {3, units(10)}});

  // t=22: every t_lu now covers min(gpsr)=16, so p3 announces the change.
  CHECK(p3.on_local_change(units(21), 3, false).sends.empty());
  o = p3.on_message(units(22), d7);
  REQUIRE(o.announcements.size() == 1);
  CHECK(o.announcements[0].step == 1);
  CHECK(o.announcements[0].at == units(16));
  CHECK(o.announcements[0].from == pa.initial);
  CHECK(o.announcements[0].to == top);
  CHECK(o.announcements[0].tr_id == trid);
  REQUIRE(o.verdict);
  CHECK(o.verdict->verdict == Verdict::Top);
  CHECK(o.verdict->at == units(16));
  REQUIRE(o.sends.size() == 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(o.sends[k].first == k);
    CHECK(o.sends[k].second.is_verdict());
  }
  CHECK(p3.halted());
}

TEST_CASE("coordinator delegates on a rising literal") {
  ApTable aps = {{"a", 0}, {"b", 1}, {"c", 2}};
  ProtocolAutomaton pa = split("!a U (a U (b & c))", aps);
  // p0 starts as coordinator of both q0->q1 conjuncts a&!b and a&!c.
  std::vector<bool> init(3, false);
  ProcessMonitor p0(&pa, 0, init);
  CHECK(p0.begin(0).sends.empty());

  MonitorOutput o = p0.on_local_change(units(2, 100000), 0, true);
  REQUIRE(o.sends.size() == 2);
  CHECK(o.sends[0].first == 1);
  CHECK(delegate_body(o.sends[0].second).tr_id == 0);
  CHECK(delegate_body(o.sends[0].second).gpsr.to_string() ==
        "[2.100000,inf)");
  CHECK(o.sends[1].first == 2);
  CHECK(delegate_body(o.sends[1].second).tr_id == 1);
  CHECK(delegate_body(o.sends[1].second).gpsr.to_string() ==
        "[2.100000,inf)");
}

TEST_CASE("step start, stale drop and duplicate notification") {
  ApTable aps = {{"a", 0}, {"b", 1}, {"c", 2}};
  ProtocolAutomaton pa = split("!a U (a U (b & c))", aps);
  int q1 = pa.tr(3).source;
  REQUIRE(conjunct_to_string(pa.tr(4), aps) == "!a & !b");

  std::vector<bool> init(3, false);
  ProcessMonitor p1(&pa, 1, init);
  CHECK(p1.begin(0).sends.empty());

  // New step at t_llc=2.1: p1 coordinates !a&!b and, with b false, must
  // delegate immediately.
  Message ss;
  ss.step = 1;
  ss.t_llc = units(2, 100000);
  ss.location = q1;
  ss.sender = 2;
  ss.body = StepStartBody{{4}};
  MonitorOutput o = p1.on_message(units(2, 200000), ss);
  CHECK(p1.step() == 1);
  CHECK(p1.location() == q1);
  CHECK(p1.t_llc() == units(2, 100000));
  REQUIRE(o.sends.size() == 1);
  CHECK(o.sends[0].first == 0);
  CHECK(delegate_body(o.sends[0].second).tr_id == 4);
  CHECK(!p1.view(4)->is_coordinator);

  // A change while not coordinating anything sends nothing.
  CHECK(p1.on_local_change(units(5, 200000), 1, true).sends.empty());

  // A message from the finished step is dropped.
  Message stale;
  stale.step = 0;
  stale.t_llc = 0;
  stale.location = pa.initial;
  stale.sender = 0;
  stale.body = DelegateBody{0, IntervalSet::from(0), {{0, 0}, {1, -kTick}}};
  o = p1.on_message(units(6), stale);
  CHECK(o.sends.empty());
  CHECK(p1.step() == 1);

  // A repeated notification for the current step is ignored: p1 does not
  // become coordinator of Tr4 again.
  o = p1.on_message(units(6), ss);
  CHECK(o.sends.empty());
  CHECK(!p1.view(4)->is_coordinator);
}

TEST_CASE("aggregate completes TrC and announces the verdict") {
  ApTable aps = {{"a", 0}, {"b", 1}, {"c", 2}};
  ProtocolAutomaton pa = split("!a U (a U (b & c))", aps);
  int q1 = pa.tr(3).source;
  int top = pa.tr(3).target;
  REQUIRE(pa.label[top] == Verdict::Top);

  std::vector<bool> init = {true, false, false};
  ProcessMonitor p0(&pa, 0, init);
  MonitorOutput o = p0.begin(0);
  CHECK(o.sends.size() == 2);  // a true at 0: both q0 conjuncts delegated

  Message ss;
  ss.step = 1;
  ss.t_llc = units(2, 100000);
  ss.location = q1;
  ss.sender = 1;
  ss.body = StepStartBody{{4, 5}};
  o = p0.on_message(units(2, 200000), ss);
  CHECK(o.sends.empty());  // !a rules out the scanned past; nothing to ask

  // b&c was enabled at 9; with gpsr of !a&!b and !a&!c empty below 9, both
  // join TrC and the step completes.
  Message agg;
  agg.step = 1;
  agg.t_llc = units(2, 100000);
  agg.location = q1;
  agg.sender = 1;
  agg.body = AggregateBody{{3}, 3, units(9)};
  o = p0.on_message(units(9, 500000), agg);
  REQUIRE(o.announcements.size() == 1);
  CHECK(o.announcements[0].at == units(9));
  CHECK(o.announcements[0].from == q1);
  CHECK(o.announcements[0].to == top);
  CHECK(o.announcements[0].tr_id == 3);
  REQUIRE(o.verdict);
  CHECK(o.verdict->verdict == Verdict::Top);
  CHECK(o.verdict->at == units(9));
  REQUIRE(o.sends.size() == 2);
  CHECK(o.sends[0].first == 1);
  CHECK(o.sends[1].first == 2);
  CHECK(o.sends[0].second.is_verdict());
  CHECK(p0.halted());
}
