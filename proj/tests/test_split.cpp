#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "decmon/boolmin.hpp"
#include "decmon/protocol_automaton.hpp"
#include "random_formula.hpp"

using namespace decmon;

namespace {

ProtocolAutomaton split(const char* text, const ApTable& aps) {
  MonitorAutomaton m =
      build_monitor(parse_ltl(text, aps), static_cast<int>(aps.size()));
  return split_transitions(m, aps);
}

}  // namespace

TEST_CASE("quine-mccluskey basics") {
  // f over (a,b): exactly the letters where a is true.
  std::vector<bool> a_only = {false, true, false, true};
  CHECK(minimize_dnf(a_only, 2) == std::vector<Term>{{1, 1}});

  // Tautology reduces to the empty term.
  std::vector<bool> all(8, true);
  CHECK(minimize_dnf(all, 3) == std::vector<Term>{{0, 0}});

  CHECK(minimize_dnf(std::vector<bool>(4, false), 2).empty());

  // xor needs both minterms.
  std::vector<bool> x = {false, true, true, false};
  CHECK(minimize_dnf(x, 2) == std::vector<Term>{{3, 1}, {3, 2}});

  // a | (b & c): three prime implicants, two survive the minimum cover.
  std::vector<bool> f(8);
  for (int l = 0; l < 8; ++l) f[l] = (l & 1) || ((l & 2) && (l & 4));
  CHECK(minimize_dnf(f, 3) == std::vector<Term>{{1, 1}, {6, 6}});
}

TEST_CASE("minimized covers are exact and minimal on random functions") {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 2000; ++it) {
    int n = 1 + static_cast<int>(rng() % 4);
    std::vector<bool> f(1u << n);
    for (std::size_t l = 0; l < f.size(); ++l) f[l] = rng() & 1;
    auto cover = minimize_dnf(f, n);
    for (std::uint32_t l = 0; l < f.size(); ++l) {
      bool covered = false;
      for (const Term& t : cover) covered = covered || t.matches(l);
      REQUIRE(covered == f[l]);
    }
    for (std::size_t i = 1; i < cover.size(); ++i)
      REQUIRE((cover[i - 1].mask < cover[i].mask ||
               (cover[i - 1].mask == cover[i].mask &&
                cover[i - 1].value < cover[i].value)));
  }
}

TEST_CASE("the running example splits into Tr0..Tr5") {
  ApTable aps = {{"a", 0}, {"b", 1}, {"c", 2}};
  ProtocolAutomaton pa = split("!a U (a U (b & c))", aps);
  REQUIRE(pa.transitions.size() == 6);
  CHECK(pa.num_processes == 3);

  auto term = [](std::uint32_t mask, std::uint32_t value) { return Term{mask, value}; };
  // Tr0/Tr1: q0 -> q1 on a&!b, a&!c; Tr2/Tr3: b&c into Top;
  // Tr4/Tr5: q1 -> Bottom on !a&!b, !a&!c.
  int q0 = pa.initial;
  CHECK(pa.tr(0).source == q0);
  CHECK(pa.tr(0).term == term(3, 1));
  CHECK(pa.tr(1).source == q0);
  CHECK(pa.tr(1).term == term(5, 1));
  CHECK(pa.tr(0).target == pa.tr(1).target);
  int q1 = pa.tr(0).target;
  CHECK(pa.label[q1] == Verdict::Unknown);

  CHECK(pa.tr(2).source == q0);
  CHECK(pa.tr(2).term == term(6, 6));
  CHECK(pa.label[pa.tr(2).target] == Verdict::Top);
  CHECK(pa.tr(3).source == q1);
  CHECK(pa.tr(3).term == term(6, 6));
  CHECK(pa.tr(3).target == pa.tr(2).target);

  CHECK(pa.tr(4).source == q1);
  CHECK(pa.tr(4).term == term(3, 0));
  CHECK(pa.label[pa.tr(4).target] == Verdict::Bottom);
  CHECK(pa.tr(5).source == q1);
  CHECK(pa.tr(5).term == term(5, 0));

  CHECK(pa.tr(0).associated == std::vector<int>{0, 1});
  CHECK(pa.tr(2).associated == std::vector<int>{1, 2});
  CHECK(pa.tr(4).associated == std::vector<int>{0, 1});
  CHECK(initial_coordinator(pa.tr(0)) == 0);
  CHECK(initial_coordinator(pa.tr(2)) == 1);

  CHECK(conjunct_to_string(pa.tr(0), aps) == "a & !b");
}

TEST_CASE("phi1 guard splits into one conjunct per follower") {
  ApTable aps = {{"a", 0}, {"b1", 1}, {"b2", 2}, {"b3", 3}};
  ProtocolAutomaton pa = split("!a U (a U (b1 & b2 & b3))", aps);
  int q0 = pa.initial;
  std::vector<Term> to_q1;
  for (int id : pa.outgoing[q0]) {
    const auto& tr = pa.tr(id);
    if (pa.label[tr.target] == Verdict::Unknown) to_q1.push_back(tr.term);
  }
  // a & !b_j for j = 1..3
  CHECK(to_q1 == std::vector<Term>{{3, 1}, {5, 1}, {9, 1}});
}

TEST_CASE("no self-loops and no transitions out of verdict locations") {
  ApTable aps = {{"a", 0}, {"b", 1}, {"c", 2}};
  for (const char* text :
       {"!a U (a U (b & c))", "<>(a & b & c)", "[](a -> (b U c))", "a U b"}) {
    ProtocolAutomaton pa = split(text, aps);
    for (const auto& tr : pa.transitions) {
      CHECK(tr.source != tr.target);
      CHECK(pa.label[tr.source] == Verdict::Unknown);
    }
    for (int loc = 0; loc < pa.num_locations; ++loc)
      if (pa.label[loc] != Verdict::Unknown) CHECK(pa.outgoing[loc].empty());
  }
}

TEST_CASE("split soundness, exhaustively over the alphabet") {
  ApTable aps = {{"a", 0}, {"b", 1}, {"c", 2}};
  std::mt19937_64 rng(7100);
  for (int it = 0; it < 200; ++it) {
    Formula f = testgen::random_formula(rng, 3, 3);
    MonitorAutomaton m = build_monitor(f, 3);
    if (!check_monitorable(m).monitorable) continue;
    ProtocolAutomaton pa = split_transitions(m, aps);
    // Every conjunct letter moves source -> target in the monitor.
    for (const auto& tr : pa.transitions)
      for (std::uint32_t sigma = 0; sigma < 8; ++sigma)
        if (tr.term.matches(sigma)) REQUIRE(m.step(tr.source, sigma) == tr.target);
    // Every non-self-loop monitor edge is covered by some conjunct.
    for (int s = 0; s < m.num_states; ++s) {
      if (m.label[s] != Verdict::Unknown) continue;
      for (std::uint32_t sigma = 0; sigma < 8; ++sigma) {
        int t = m.step(s, sigma);
        if (t == s) continue;
        bool covered = false;
        for (int id : pa.outgoing[s])
          covered = covered || (pa.tr(id).target == t && pa.tr(id).term.matches(sigma));
        REQUIRE(covered);
      }
    }
  }
}

TEST_CASE("full-cover guard becomes the empty conjunct") {
  // X X a: for one step every letter leads to the same successor.
  ApTable aps = {{"a", 0}};
  ProtocolAutomaton pa = split("X X a", aps);
  bool found_constant = false;
  for (const auto& tr : pa.transitions)
    if (tr.term == Term{0, 0}) {
      found_constant = true;
      CHECK(tr.conjunct.empty());
      CHECK(tr.associated.empty());
      CHECK(initial_coordinator(tr) == -1);
    }
  CHECK(found_constant);
}

TEST_CASE("export formats mention every transition") {
  ApTable aps = {{"a", 0}, {"b", 1}, {"c", 2}};
  ProtocolAutomaton pa = split("!a U (a U (b & c))", aps);
  std::string json = to_json(pa);
  std::string dot = to_dot(pa);
  for (int id = 0; id < 6; ++id) {
    CHECK(json.find("\"id\": " + std::to_string(id)) != std::string::npos);
    CHECK(dot.find("Tr" + std::to_string(id)) != std::string::npos);
  }
}
