#include "decmon/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "decmon/central.hpp"
#include "decmon/trace.hpp"

namespace decmon {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string family_text(const std::string& family, int k) {
  auto followers = [&](const char* sep) {
    std::string s;
    for (int j = 1; j <= k; ++j) {
      if (j > 1) s += sep;
      s += "b" + std::to_string(j);
    }
    return s;
  };
  if (family == "phi1") return "!a U (a U (" + followers(" & ") + "))";
  if (family == "phi2") return "a U (" + followers(" & ") + ")";
  if (family == "phi3") return "<>(a & " + followers(" & ") + ")";
  if (family == "phi4") return "[](a -> (b U c))";
  throw std::invalid_argument("unknown property family: " + family);
}

ApTable family_aps(const std::string& family, int k) {
  if (family == "phi4") return {{"a", 0}, {"b", 1}, {"c", 2}};
  ApTable aps{{"a", 0}};
  for (int j = 1; j <= k; ++j) aps.push_back({"b" + std::to_string(j), j});
  return aps;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return splitmix64(splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b) ^ c);
}

PropertyInstance make_family_instance(const std::string& family, int k) {
  PropertyInstance inst;
  inst.name = family == "phi4" ? family : family + " k=" + std::to_string(k);
  inst.aps = family_aps(family, k);
  inst.text = family_text(family, k);
  MonitorAutomaton m = build_monitor(parse_ltl(inst.text, inst.aps),
                                     static_cast<int>(inst.aps.size()));
  inst.pa = split_transitions(m, inst.aps);
  return inst;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  std::vector<PropertyInstance> instances;
  if (!cfg.custom_ltl.empty()) {
    PropertyInstance inst;
    inst.name = "custom";
    inst.text = cfg.custom_ltl;
    for (const std::string& spec : cfg.custom_owners) {
      auto sep = spec.find(':');
      if (sep == std::string::npos)
        throw std::invalid_argument("owner spec must be name:process");
      inst.aps.push_back({spec.substr(0, sep), std::stoi(spec.substr(sep + 1))});
    }
    MonitorAutomaton m = build_monitor(parse_ltl(inst.text, inst.aps),
                                       static_cast<int>(inst.aps.size()));
    inst.pa = split_transitions(m, inst.aps);
    instances.push_back(std::move(inst));
  } else {
    for (const std::string& family : cfg.families) {
      if (family == "phi4") {
        instances.push_back(make_family_instance(family, 0));
      } else {
        for (int k = cfg.k_min; k <= cfg.k_max; ++k)
          instances.push_back(make_family_instance(family, k));
      }
    }
  }

  ExperimentResult result;
  int per_bucket_per_mu =
      cfg.traces_per_experiment / static_cast<int>(cfg.mus.size());

  for (std::size_t pi = 0; pi < instances.size(); ++pi) {
    const PropertyInstance& inst = instances[pi];
    // An outcome bucket is structurally infeasible when no location carries
    // that verdict (e.g. phi3 can never be violated).
    auto feasible = [&](Verdict v) {
      if (v == Verdict::Unknown) return true;
      for (int q = 0; q < inst.pa.num_locations; ++q)
        if (inst.pa.label[q] == v) return true;
      return false;
    };
    const Verdict outcomes[] = {Verdict::Top, Verdict::Bottom, Verdict::Unknown};
    for (Verdict v : outcomes)
      if (!feasible(v))
        result.skipped.push_back(inst.name + " outcome=" + to_string(v) +
                                 " (structurally infeasible)");

    std::vector<double> alphas;
    for (std::size_t mi = 0; mi < cfg.mus.size(); ++mi) {
      double mu = cfg.mus[mi];
      std::map<Verdict, int> filled;
      int needed_buckets = 0;
      for (Verdict v : outcomes)
        if (feasible(v)) ++needed_buckets;
      long max_attempts =
          static_cast<long>(cfg.max_attempt_factor) * needed_buckets * per_bucket_per_mu;
      long attempt = 0;
      int total_filled = 0;
      while (total_filled < needed_buckets * per_bucket_per_mu && attempt < max_attempts) {
        std::uint64_t tseed = mix_seed(cfg.seed, pi, mi, static_cast<std::uint64_t>(attempt));
        ++attempt;
        Trace trace = generate_trace(inst.aps, mu, cfg.horizon, tseed);
        // The campaign draws the initial valuation at random: a fixed
        // all-false start would decide a U (b1 & ... & bk) at t=0 on every
        // trace, leaving its other outcome buckets unfillable.
        std::uint64_t ibits = splitmix64(tseed ^ 0x1717171717ULL);
        for (std::size_t ap = 0; ap < trace.initial.size(); ++ap)
          trace.initial[ap] = (ibits >> ap) & 1;
        RunResult truth = oracle_evaluate(inst.pa, trace);
        Verdict outcome = truth.verdict;
        // A trace decided at t=0 by its initial valuation alone monitors
        // nothing; redraw instead of bucketing a degenerate run.
        if (outcome != Verdict::Unknown && truth.verdict_time == 0) continue;
        if (!feasible(outcome) || filled[outcome] >= per_bucket_per_mu) continue;
        int run_index = filled[outcome]++;
        ++total_filled;

        // Monitoring stops at the verdict, so a decided trace effectively
        // ends there; drop the events after it before running either side.
        if (outcome != Verdict::Unknown) {
          std::erase_if(trace.events, [&](const TraceEvent& e) {
            return e.time > truth.verdict_time;
          });
        }

        SimConfig sim;
        sim.delay_lo = cfg.delay_lo;
        sim.delay_hi = cfg.delay_hi;
        sim.seed = splitmix64(tseed ^ 0xdecdecdecULL);
        RunResult dec = run_simulation(inst.pa, trace, sim);
        RunResult cen = run_centralized(inst.pa, trace, sim);

        RunRecord rec;
        rec.property = inst.name;
        rec.outcome = outcome;
        rec.mu = mu;
        rec.run_index = run_index;
        rec.central = cen.total_messages;
        rec.decentralized = dec.total_messages;
        rec.decentralized_zero = dec.total_messages == 0;
        rec.alpha = static_cast<double>(rec.central) /
                    static_cast<double>(std::max(1L, rec.decentralized));
        alphas.push_back(rec.alpha);
        result.runs.push_back(std::move(rec));
      }
      for (Verdict v : outcomes) {
        if (!feasible(v)) continue;
        if (filled[v] < per_bucket_per_mu)
          result.skipped.push_back(inst.name + " outcome=" + to_string(v) + " mu=" +
                                   std::to_string(static_cast<long>(mu)) + " (short: " +
                                   std::to_string(filled[v]) + "/" +
                                   std::to_string(per_bucket_per_mu) + ")");
      }
    }

    if (!alphas.empty()) {
      SummaryRow row;
      row.property = inst.name + "  [" + inst.text + "]";
      row.runs = static_cast<long>(alphas.size());
      row.min_alpha = *std::min_element(alphas.begin(), alphas.end());
      row.max_alpha = *std::max_element(alphas.begin(), alphas.end());
      double sum = 0;
      for (double a : alphas) sum += a;
      row.avg_alpha = sum / static_cast<double>(alphas.size());
      result.rows.push_back(std::move(row));
    }
  }

  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](const SummaryRow& a, const SummaryRow& b) {
                     return a.avg_alpha < b.avg_alpha;
                   });
  return result;
}

std::string render_csv(const ExperimentResult& r) {
  std::ostringstream os;
  os << "property,outcome,mu,run,central_messages,decentralized_messages,alpha,"
        "decentralized_zero\n";
  for (const RunRecord& rec : r.runs) {
    char alpha[32];
    std::snprintf(alpha, sizeof alpha, "%.6f", rec.alpha);
    os << rec.property << "," << to_string(rec.outcome) << ","
       << static_cast<long>(rec.mu) << "," << rec.run_index << "," << rec.central << ","
       << rec.decentralized << "," << alpha << "," << (rec.decentralized_zero ? 1 : 0)
       << "\n";
  }
  return os.str();
}

std::string render_table(const std::vector<SummaryRow>& rows) {
  std::ostringstream os;
  os << "| Property | Min. alpha | Avg. alpha | Max. alpha | Runs |\n";
  os << "|---|---|---|---|---|\n";
  for (const SummaryRow& row : rows) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "| %s | %.3f | %.3f | %.3f | %ld |\n",
                  row.property.c_str(), row.min_alpha, row.avg_alpha, row.max_alpha,
                  row.runs);
    os << buf;
  }
  return os.str();
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  auto split_list = [](const std::string& s) {
    std::vector<std::string> out;
    std::istringstream ls(s);
    std::string tok;
    while (std::getline(ls, tok, ',')) out.push_back(tok);
    return out;
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    if (key == "families") cfg.families = split_list(value);
    else if (key == "property") cfg.custom_ltl = value;
    else if (key == "owners") cfg.custom_owners = split_list(value);
    else if (key == "k_min") cfg.k_min = std::stoi(value);
    else if (key == "k_max") cfg.k_max = std::stoi(value);
    else if (key == "mus") {
      cfg.mus.clear();
      for (const std::string& m : split_list(value)) cfg.mus.push_back(std::stod(m));
    } else if (key == "traces_per_experiment") cfg.traces_per_experiment = std::stoi(value);
    else if (key == "horizon") cfg.horizon = parse_time(value);
    else if (key == "delay_lo") cfg.delay_lo = parse_time(value);
    else if (key == "delay_hi") cfg.delay_hi = parse_time(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "max_attempt_factor") cfg.max_attempt_factor = std::stoi(value);
    else throw std::invalid_argument("config: unknown key " + key);
  }
  if (cfg.traces_per_experiment <= 0) throw std::invalid_argument("config: traces_per_experiment must be > 0");
  if (cfg.horizon <= 0) throw std::invalid_argument("config: horizon must be > 0");
  if (cfg.k_min < 1) throw std::invalid_argument("config: k_min must be >= 1");
  return cfg;
}

}  // namespace decmon
