#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "decmon/message.hpp"

using namespace decmon;

namespace {

Message header(int step, Time t_llc, int location, int sender) {
  Message m;
  m.step = step;
  m.t_llc = t_llc;
  m.location = location;
  m.sender = sender;
  return m;
}

void check_round_trip(const Message& m) {
  std::string wire = serialize(m);
  Message back = parse_message(wire);
  CHECK(serialize(back) == wire);
  CHECK(back.step == m.step);
  CHECK(back.t_llc == m.t_llc);
  CHECK(back.location == m.location);
  CHECK(back.sender == m.sender);
  CHECK(back.body.index() == m.body.index());
}

}  // namespace

TEST_CASE("canonical wire forms") {
  Message m = header(3, units(2, 100000), 1, 2);
  DelegateBody d;
  d.tr_id = 4;
  d.gpsr = IntervalSet::interval(units(16), units(18)).unite(IntervalSet::from(units(19)));
  d.t_lu = {{0, units(16)}, {1, units(19)}, {2, units(20)}};
  m.body = d;
  CHECK(serialize(m) ==
        "92:Delegate 3 2100000 1 2 4 [16000000,18000000)u[19000000,inf) "
        "0:16000000,1:19000000,2:20000000");

  m.body = AggregateBody{{0, 2}, 2, units(9)};
  CHECK(serialize(m) == "37:Aggregate 3 2100000 1 2 0,2 2 9000000");
  m.body = AggregateBody{};
  CHECK(serialize(m) == "32:Aggregate 3 2100000 1 2 - -1 inf");
  m.body = StepStartBody{{1, 3}};
  CHECK(serialize(m) == "27:StepStart 3 2100000 1 2 1,3");
  m.body = VerdictBody{Verdict::Top, units(9)};
  CHECK(serialize(m) == "33:Verdict 3 2100000 1 2 top 9000000");
}

TEST_CASE("type predicates") {
  Message m = header(0, 0, 0, 0);
  m.body = DelegateBody{};
  CHECK(m.is_delegate());
  CHECK(m.type_name() == std::string("Delegate"));
  m.body = AggregateBody{};
  CHECK(m.is_aggregate());
  m.body = StepStartBody{};
  CHECK(m.is_step_start());
  m.body = VerdictBody{};
  CHECK(m.is_verdict());
  CHECK(m.type_name() == std::string("Verdict"));
}

TEST_CASE("round trips") {
  Message m = header(7, 0, 2, 0);
  DelegateBody d;
  d.tr_id = 0;
  d.gpsr = IntervalSet::empty();
  d.t_lu = {{0, -1}, {1, kTimeInf}};
  m.body = d;
  check_round_trip(m);

  d.gpsr = IntervalSet::from(0);
  d.t_lu = {{0, 0}};
  m.body = d;
  check_round_trip(m);

  m.body = AggregateBody{{5}, -1, kTimeInf};
  check_round_trip(m);
  m.body = StepStartBody{};
  check_round_trip(m);
  m.body = VerdictBody{Verdict::Bottom, units(10)};
  check_round_trip(m);
}

TEST_CASE("randomized round trips") {
  std::mt19937_64 rng(31337);
  for (int it = 0; it < 5000; ++it) {
    Message m = header(static_cast<int>(rng() % 100),
                       static_cast<Time>(rng() % 100000000),
                       static_cast<int>(rng() % 5), static_cast<int>(rng() % 8));
    switch (rng() % 4) {
      case 0: {
        DelegateBody d;
        d.tr_id = static_cast<int>(rng() % 12);
        for (int i = 0; i < 3; ++i) {
          Time lo = static_cast<Time>(rng() % 100000000);
          Time hi = lo + 1 + static_cast<Time>(rng() % 1000000);
          d.gpsr = d.gpsr.unite(IntervalSet::interval(lo, hi));
        }
        if (rng() % 2) d.gpsr = d.gpsr.unite(IntervalSet::from(units(99)));
        for (int p = 0; p < 4; ++p)
          d.t_lu.emplace_back(p, static_cast<Time>(rng() % 100000000) - 1);
        m.body = d;
        break;
      }
      case 1: {
        AggregateBody a;
        for (int i = 0; i < static_cast<int>(rng() % 4); ++i)
          a.trc.push_back(i * 2 + static_cast<int>(rng() % 2));
        if (rng() % 2) {
          a.tr_e = static_cast<int>(rng() % 12);
          a.t_tr_e = static_cast<Time>(rng() % 100000000);
        }
        m.body = a;
        break;
      }
      case 2: {
        StepStartBody s;
        for (int i = 0; i < static_cast<int>(rng() % 5); ++i)
          s.coordinated_trs.push_back(i * 3 + static_cast<int>(rng() % 3));
        m.body = s;
        break;
      }
      default:
        m.body = VerdictBody{static_cast<Verdict>(rng() % 3),
                             static_cast<Time>(rng() % 100000000)};
    }
    std::string wire = serialize(m);
    CHECK(serialize(parse_message(wire)) == wire);
  }
}

TEST_CASE("malformed wire is rejected") {
  CHECK_THROWS(parse_message(""));
  CHECK_THROWS(parse_message("banana"));
  CHECK_THROWS(parse_message("5:Deleg"));
  CHECK_THROWS(parse_message("99:Delegate 3 2100000 1 2"));  // bad length
  CHECK_THROWS(parse_message("21:Unknown 3 2100000 1 2"));
}
