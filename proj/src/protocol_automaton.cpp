#include "decmon/protocol_automaton.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace decmon {

ProtocolAutomaton split_transitions(const MonitorAutomaton& m, const ApTable& aps) {
  ProtocolAutomaton pa;
  pa.aps = aps;
  pa.num_processes = num_processes(aps);
  pa.num_locations = m.num_states;
  pa.initial = m.initial;
  pa.label.assign(m.label.begin(), m.label.end());
  pa.outgoing.resize(m.num_states);

  std::uint32_t num_letters = 1u << m.num_aps;
  for (int src = 0; src < m.num_states; ++src) {
    if (m.label[src] != Verdict::Unknown) continue;
    // Distinct non-self targets in id order, each with its guard letter set.
    std::vector<int> targets;
    for (std::uint32_t l = 0; l < num_letters; ++l) {
      int dst = m.next[src][l];
      if (dst == src) continue;
      if (std::find(targets.begin(), targets.end(), dst) == targets.end())
        targets.push_back(dst);
    }
    std::sort(targets.begin(), targets.end());
    for (int dst : targets) {
      std::vector<bool> letters(num_letters, false);
      for (std::uint32_t l = 0; l < num_letters; ++l)
        if (m.next[src][l] == dst) letters[l] = true;
      for (const Term& t : minimize_dnf(letters, m.num_aps)) {
        ProtocolTransition tr;
        tr.id = static_cast<int>(pa.transitions.size());
        tr.source = src;
        tr.target = dst;
        tr.term = t;
        std::set<int> owners;
        for (int ap = 0; ap < m.num_aps; ++ap) {
          if (!(t.mask & (1u << ap))) continue;
          tr.conjunct.push_back({ap, (t.value & (1u << ap)) != 0});
          owners.insert(aps[ap].owner);
        }
        tr.associated.assign(owners.begin(), owners.end());
        pa.outgoing[src].push_back(tr.id);
        pa.transitions.push_back(std::move(tr));
      }
    }
  }
  return pa;
}

int initial_coordinator(const ProtocolTransition& tr) {
  return tr.associated.empty() ? -1 : tr.associated.front();
}

std::string conjunct_to_string(const ProtocolTransition& tr, const ApTable& aps) {
  if (tr.conjunct.empty()) return "true";
  std::string s;
  for (const Literal& lit : tr.conjunct) {
    if (!s.empty()) s += " & ";
    if (!lit.positive) s += "!";
    s += aps[lit.ap].name;
  }
  return s;
}

std::string to_json(const ProtocolAutomaton& pa) {
  std::ostringstream os;
  os << "{\n  \"propositions\": [";
  for (std::size_t i = 0; i < pa.aps.size(); ++i) {
    if (i) os << ", ";
    os << "{\"name\": \"" << pa.aps[i].name << "\", \"owner\": " << pa.aps[i].owner << "}";
  }
  os << "],\n  \"initial\": " << pa.initial << ",\n  \"locations\": [";
  for (int q = 0; q < pa.num_locations; ++q) {
    if (q) os << ", ";
    os << "{\"id\": " << q << ", \"label\": \"" << to_string(pa.label[q]) << "\"}";
  }
  os << "],\n  \"transitions\": [\n";
  for (std::size_t i = 0; i < pa.transitions.size(); ++i) {
    const ProtocolTransition& tr = pa.transitions[i];
    os << "    {\"id\": " << tr.id << ", \"source\": " << tr.source
       << ", \"target\": " << tr.target << ", \"conjunct\": \""
       << conjunct_to_string(tr, pa.aps) << "\", \"associated\": [";
    for (std::size_t j = 0; j < tr.associated.size(); ++j) {
      if (j) os << ", ";
      os << tr.associated[j];
    }
    os << "]}" << (i + 1 < pa.transitions.size() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

std::string to_dot(const ProtocolAutomaton& pa) {
  std::ostringstream os;
  os << "digraph monitor {\n  rankdir=LR;\n  init [shape=point];\n";
  for (int q = 0; q < pa.num_locations; ++q) {
    std::string name = "q" + std::to_string(q);
    std::string lbl = name;
    if (pa.label[q] == Verdict::Top) lbl += " T";
    if (pa.label[q] == Verdict::Bottom) lbl += " F";
    os << "  " << name << " [shape="
       << (pa.label[q] == Verdict::Unknown ? "circle" : "doublecircle")
       << ", label=\"" << lbl << "\"];\n";
  }
  os << "  init -> q" << pa.initial << ";\n";
  for (const ProtocolTransition& tr : pa.transitions) {
    os << "  q" << tr.source << " -> q" << tr.target << " [label=\"Tr" << tr.id
       << ": " << conjunct_to_string(tr, pa.aps) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace decmon
