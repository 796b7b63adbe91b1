#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "decmon/central.hpp"
#include "decmon/experiment.hpp"
#include "decmon/monitor.hpp"
#include "decmon/sim.hpp"
#include "decmon/trace.hpp"

namespace {

using namespace decmon;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

ApTable parse_owner_specs(const std::vector<std::string>& specs) {
  ApTable aps;
  for (const std::string& s : specs) {
    auto sep = s.find(':');
    if (sep == std::string::npos)
      throw std::runtime_error("--ap expects name:process, got " + s);
    aps.push_back({s.substr(0, sep), std::stoi(s.substr(sep + 1))});
  }
  return aps;
}

ProtocolAutomaton compile_property(const std::string& text, const ApTable& aps) {
  Formula f = parse_ltl(text, aps);
  MonitorAutomaton m = build_monitor(f, static_cast<int>(aps.size()));
  return split_transitions(m, aps);
}

void print_result(const ProtocolAutomaton& pa, const RunResult& r, bool decentralized) {
  std::cout << "verdict " << to_string(r.verdict);
  if (r.verdict != Verdict::Unknown)
    std::cout << " at " << format_time(r.verdict_time);
  std::cout << "\n";
  for (const LocationChange& ch : r.location_changes)
    std::cout << "change " << format_time(ch.time) << " q" << ch.from << " -> q" << ch.to
              << " via Tr" << ch.tr_id << "\n";
  if (decentralized) {
    for (const auto& [type, count] : r.message_counts)
      std::cout << "messages " << type << " " << count << "\n";
  }
  std::cout << "messages total " << r.total_messages << "\n";
  (void)pa;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized LTL runtime verification toolkit"};
  app.require_subcommand(1);

  std::string property, trace_path, out_path, dot_path, config_path, log_path;
  std::vector<std::string> ap_specs;
  std::uint64_t seed = 1;
  double mu = 100;
  std::string horizon_text = "100";
  bool use_central = false;

  auto* compile = app.add_subcommand("compile", "Compile an LTL property to a monitor automaton");
  compile->add_option("property", property, "LTL formula")->required();
  compile->add_option("--ap", ap_specs, "proposition as name:process (repeatable)")->required();
  compile->add_option("-o,--out", out_path, "write automaton JSON here (default stdout)");
  compile->add_option("--dot", dot_path, "also write GraphViz DOT");

  auto* run = app.add_subcommand("run", "Run the decentralized monitors over a trace");
  run->add_option("property", property, "LTL formula")->required();
  run->add_option("trace", trace_path, "trace file")->required();
  run->add_option("--seed", seed, "delay-sampler seed");
  run->add_option("--log", log_path, "write the JSON-lines event log here");
  run->add_flag("--central", use_central, "run the centralized baseline instead");

  auto* oracle = app.add_subcommand("oracle", "Offline ground truth for a trace");
  oracle->add_option("property", property, "LTL formula")->required();
  oracle->add_option("trace", trace_path, "trace file")->required();

  auto* bench = app.add_subcommand("bench", "Run a message-efficiency campaign");
  bench->add_option("config", config_path, "campaign config file")->required();
  bench->add_option("-o,--out", out_path, "CSV output path");

  auto* trace_gen = app.add_subcommand("trace-gen", "Generate a random trace");
  trace_gen->add_option("--ap", ap_specs, "proposition as name:process (repeatable)")->required();
  trace_gen->add_option("--mu", mu, "expected events per process");
  trace_gen->add_option("--horizon", horizon_text, "time horizon in units");
  trace_gen->add_option("--seed", seed, "generator seed");
  trace_gen->add_option("-o,--out", out_path, "trace output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compile->parsed()) {
      ApTable aps = parse_owner_specs(ap_specs);
      ProtocolAutomaton pa = compile_property(property, aps);
      Monitorability mon = check_monitorable(
          build_monitor(parse_ltl(property, aps), static_cast<int>(aps.size())));
      std::string json = to_json(pa);
      if (out_path.empty())
        std::cout << json;
      else
        write_file(out_path, json);
      if (!dot_path.empty()) write_file(dot_path, to_dot(pa));
      if (!mon.monitorable)
        std::cerr << "warning: property is non-monitorable (no verdict reachable)\n";
      else if (!mon.dead_unknown.empty())
        std::cerr << "warning: " << mon.dead_unknown.size()
                  << " reachable location(s) can never reach a verdict\n";
      return 0;
    }
    if (run->parsed() || oracle->parsed()) {
      Trace trace = load_trace(read_file(trace_path));
      ProtocolAutomaton pa = compile_property(property, trace.aps);
      if (oracle->parsed()) {
        print_result(pa, oracle_evaluate(pa, trace), false);
        return 0;
      }
      if (use_central) {
        SimConfig cfg;
        cfg.seed = seed;
        print_result(pa, run_centralized(pa, trace, cfg), false);
        return 0;
      }
      SimConfig cfg;
      cfg.seed = seed;
      std::string log;
      if (!log_path.empty()) cfg.event_log = &log;
      print_result(pa, run_simulation(pa, trace, cfg), true);
      if (!log_path.empty()) write_file(log_path, log);
      return 0;
    }
    if (bench->parsed()) {
      ExperimentConfig cfg = parse_config(read_file(config_path));
      ExperimentResult result = run_experiment(cfg);
      if (!out_path.empty()) write_file(out_path, render_csv(result));
      std::cout << render_table(result.rows);
      for (const std::string& s : result.skipped) std::cerr << "skipped: " << s << "\n";
      return result.skipped.empty() ? 0 : 2;
    }
    if (trace_gen->parsed()) {
      ApTable aps = parse_owner_specs(ap_specs);
      Trace t = generate_trace(aps, mu, parse_time(horizon_text), seed);
      std::string text = save_trace(t);
      if (out_path.empty())
        std::cout << text;
      else
        write_file(out_path, text);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
