#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "decmon/protocol_automaton.hpp"
#include "decmon/sim.hpp"

namespace decmon {

struct ExperimentConfig {
  std::vector<std::string> families = {"phi1", "phi2", "phi3", "phi4"};
  std::string custom_ltl;  // when nonempty, replaces the families
  std::vector<std::string> custom_owners;  // "name:process" for custom_ltl
  int k_min = 2;
  int k_max = 10;
  std::vector<double> mus = {10, 100, 1000};
  int traces_per_experiment = 600;  // split evenly across mus
  Time horizon = 100 * kTicksPerUnit;
  Time delay_lo = 0;
  Time delay_hi = 2 * kTicksPerUnit;
  std::uint64_t seed = 1;
  int max_attempt_factor = 50;  // generation attempts per needed trace
};

// One property instance: formula text, AP layout, compiled automaton.
struct PropertyInstance {
  std::string name;      // e.g. "phi1 k=4"
  std::string text;      // LTL source
  ApTable aps;
  ProtocolAutomaton pa;
};

struct RunRecord {
  std::string property;
  Verdict outcome = Verdict::Unknown;
  double mu = 0;
  int run_index = 0;
  long central = 0;
  long decentralized = 0;
  double alpha = 0;          // central / max(1, decentralized)
  bool decentralized_zero = false;
};

struct SummaryRow {
  std::string property;
  double min_alpha = 0;
  double avg_alpha = 0;
  double max_alpha = 0;
  long runs = 0;
};

struct ExperimentResult {
  std::vector<RunRecord> runs;
  std::vector<SummaryRow> rows;      // sorted by avg alpha ascending
  std::vector<std::string> skipped;  // infeasible/short outcome buckets
};

// Property families of the evaluation: phi1(k) = !a U (a U (b1&..&bk)),
// phi2(k) = a U (b1&..&bk), phi3(k) = <>(a&b1&..&bk), phi4 = [](a->(b U c)).
// a lives on process 0 and b_j on process j; phi4 uses processes 0,1,2.
PropertyInstance make_family_instance(const std::string& family, int k);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::string render_csv(const ExperimentResult& r);
std::string render_table(const std::vector<SummaryRow>& rows);

ExperimentConfig parse_config(const std::string& text);

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c);

}  // namespace decmon
