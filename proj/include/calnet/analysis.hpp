#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "calnet/checking.hpp"
#include "calnet/flows.hpp"
#include "calnet/forecaster.hpp"
#include "calnet/network.hpp"
#include "calnet/sampler.hpp"

namespace calnet {

// Exact fraction of window fillings of length (window_factor-1)*window_base
// after x on which every weak-pdf approximation finishes within the budget
// yet fewer than quota_factor*window_base bits come out hard. Brute-force
// enumeration; rejects windows longer than 24 bits.
Rat hard_portion_oracle(const ForecasterProgram& prog, const BinarySeq& x, long window_base,
                        long budget);

struct SurvivalRow {
  long level = 0;
  Rat mass;        // level sum of R minus the mass just recovered via edges
  Rat bound;       // 1 - sum_{k<=level} (k+n0)^-2
  bool ok_bound = true;
  int stage_case = 0;   // case of the stage that fixed this level; 0 = unknown
  bool ok_step = true;  // step rule into the next level
};

struct SurvivalAudit {
  std::vector<SurvivalRow> rows;
  bool ok = true;
};

// Exact audit of how much walk mass survives each level: drops may occur
// only where a task started a level, and only by that level's fresh delay.
SurvivalAudit audit_survival_series(const Network& net);

struct CheckpointStat {
  long step = 0;
  Rat exact_mean;    // (1/step) * exact expectation of the deviation sum
  Rat sampled_mean;  // (1/step) * one sampled deviation sum
};

// Everything certified about one mounted edge lying on the generated
// sequence.
struct EdgeCertificate {
  std::size_t edge_index = 0;
  long start_len = 0;
  long end_len = 0;
  long mount_stage = 0;
  long window_end = 0;
  long required_hard = 0;
  long hard_window = 0;  // recount over (start_len, window_end]
  long hard_full = 0;    // recount over (start_len, end_len]
  bool hard_ok = false;
  long selected_window0 = 0;  // side-0 selections in (start_len, end_len]
  long selected_window1 = 0;
  int realized_side = 0;
  bool purity_ok = false;
  Rat expectation0;  // exact E of the selected deviation sum, side 0
  Rat expectation1;
  Rat bound;  // (quota*start/4)(1/2 - kappa) - start
  bool expectation_ok = false;
  std::vector<CheckpointStat> checkpoints0;
  std::vector<CheckpointStat> checkpoints1;
};

struct ProgramRecord {
  int task = -1;
  std::string name;
  long s = 1;
  bool defined_along_omega = false;
  std::string excuse;  // nonempty when the theorem hypothesis is unmet
  std::vector<EdgeCertificate> certificates;
};

struct ExperimentReport {
  std::uint64_t seed = 0;
  std::string network_hash;
  long depth = 0;
  std::vector<long> checkpoints;
  GenOutcome generated;
  std::vector<ProgramRecord> programs;
  bool all_ok = true;

  nlohmann::json to_json() const;
};

// Generates one sequence from the network and certifies, for every pool
// program with a mounted edge on it, the hard-bit quota, the constancy of
// the selected outcomes, and the exact expectation bound of the selected
// deviation sum.
ExperimentReport miscalibration_experiment(const Network& net, const Pool& pool,
                                           std::uint64_t seed, std::vector<long> checkpoints);

struct MartingaleResult {
  Rat empirical;  // mean over trials of the per-step-averaged deviation sum
  Rat exact;      // its exact expectation
  Rat gap;        // empirical - exact
};

// Monte Carlo check that sampled deviation sums concentrate on their exact
// expectation; every quantity is an exact rational.
MartingaleResult martingale_check(const Forecaster& f, const BinarySeq& omega,
                                  const SelectionRule& delta, int side, long trials,
                                  std::uint64_t seed);

}  // namespace calnet
