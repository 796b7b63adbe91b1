#include "decmon/trace.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace decmon {

Trace generate_trace(const ApTable& aps, double mu, Time horizon, std::uint64_t seed) {
  Trace t;
  t.aps = aps;
  t.horizon = horizon;
  t.initial.assign(aps.size(), false);

  int n = num_processes(aps);
  std::vector<std::vector<int>> owned(n);
  for (std::size_t ap = 0; ap < aps.size(); ++ap)
    owned[aps[ap].owner].push_back(static_cast<int>(ap));

  std::mt19937_64 rng(seed);
  std::poisson_distribution<int> count_dist(mu);
  std::uniform_int_distribution<Time> time_dist(0, horizon - 1);

  // Distinct timestamps keep simultaneous-change tie-breaking out of the
  // protocol-vs-oracle comparison; collisions are vanishingly rare on the
  // microtick lattice anyway.
  std::set<Time> used;
  std::vector<std::pair<Time, int>> instants;  // (time, process)
  for (int p = 0; p < n; ++p) {
    if (owned[p].empty()) continue;
    int count = count_dist(rng);
    for (int e = 0; e < count; ++e) {
      Time at;
      do {
        at = time_dist(rng);
      } while (!used.insert(at).second);
      instants.emplace_back(at, p);
    }
  }
  std::sort(instants.begin(), instants.end());

  std::vector<bool> cur = t.initial;
  for (auto& [at, p] : instants) {
    int ap = owned[p][std::uniform_int_distribution<int>(
        0, static_cast<int>(owned[p].size()) - 1)(rng)];
    cur[ap] = !cur[ap];
    t.events.push_back({at, ap, cur[ap]});
  }
  return t;
}

std::string save_trace(const Trace& t) {
  std::ostringstream os;
  for (const auto& ap : t.aps) os << "ap " << ap.name << " " << ap.owner << "\n";
  os << "horizon " << format_time(t.horizon) << "\n";
  for (std::size_t i = 0; i < t.aps.size(); ++i)
    if (t.initial[i]) os << "init " << t.aps[i].name << " true\n";
  for (const auto& e : t.events)
    os << format_time(e.time) << " " << t.aps[e.ap].name << " "
       << (e.value ? "true" : "false") << "\n";
  return os.str();
}

Trace load_trace(const std::string& text) {
  Trace t;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string a, b, c;
    if (!(ls >> a >> b)) throw std::invalid_argument("trace line " + std::to_string(lineno));
    if (a == "ap") {
      int owner;
      if (!(ls >> owner)) throw std::invalid_argument("trace: bad ap line " + std::to_string(lineno));
      t.aps.push_back({b, owner});
      t.initial.push_back(false);
    } else if (a == "horizon") {
      t.horizon = parse_time(b);
    } else if (a == "init") {
      if (!(ls >> c)) throw std::invalid_argument("trace: bad init line " + std::to_string(lineno));
      int ap = find_ap(t.aps, b);
      if (ap < 0) throw std::invalid_argument("trace: unknown proposition " + b);
      t.initial[ap] = c == "true";
    } else {
      if (!(ls >> c)) throw std::invalid_argument("trace: bad event line " + std::to_string(lineno));
      int ap = find_ap(t.aps, b);
      if (ap < 0) throw std::invalid_argument("trace: unknown proposition " + b);
      t.events.push_back({parse_time(a), ap, c == "true"});
    }
  }
  std::stable_sort(t.events.begin(), t.events.end(),
                   [](const TraceEvent& x, const TraceEvent& y) { return x.time < y.time; });
  return t;
}

}  // namespace decmon
