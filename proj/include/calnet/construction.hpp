#pragma once

#include <optional>

#include "calnet/forecaster.hpp"
#include "calnet/network.hpp"
#include "calnet/rat.hpp"

namespace calnet {

// Parameters of the staged build. n0 defaults to ceil(2/eps), which makes
// the tail sum of (k+n0)^-2 at most eps/2. Stage n grants n evaluation
// steps to every forecaster call it makes.
struct BuildParams {
  long depth = 0;
  Rat eps = Rat(1, 10);
  std::optional<long> n0_override;
  const Pool* pool = nullptr;

  long n0() const;
};

// Hard-bit quota multiplier for a task: max(task, 1).
long quota_factor(int task);

// Window factor of a task: candidate endpoints sit at stages
// n >= window_factor(task) * l(x), and the certified window of a mount at
// x is (l(x), window_factor(task) * l(x)]. Computed exactly.
long window_factor(int task);

// Delay assigned to a whole level when a task starts or restarts.
Rat fresh_delay(long stage, long n0);

// The admissibility relation for a candidate endpoint `beta` over node `x`
// at the given stage: the stage is late enough, beta extends x to length
// `stage`, no prefix of beta is fully delayed, and the whole certification
// window evaluates within the stage budget with enough hard bits.
bool admissible_candidate(const ForecasterProgram& prog, const Network& net,
                          const BinarySeq& x, const BinarySeq& beta, long stage);

// Lexicographically least admissible endpoint over x, if any. The stage's
// task must match the task scheduled at depth l(x).
std::optional<BinarySeq> least_candidate(const BinarySeq& x, const Network& net,
                                         const Pool& pool, long stage);

// First stage at which the task may act: the least m with that task
// scheduled and beyond the endpoints of all lower-task edges.
long window_start(int task, const Network& net);

// Applies one stage of the construction to the network, appending a stage
// event. Throws if the stage leaves the network invalid.
void build_step(Network& net, const Pool& pool, long stage);

// Runs stages 1..depth. Deterministic in the parameters.
Network build_network(const BuildParams& params);

// Rebuilds a network from its stage log alone and returns the rebuilt
// network; throws if the log is inconsistent with what it reproduces.
Network replay_stage_log(const Network& original);

// One human-readable line per stage that changed the network.
std::string stage_audit_text(const Network& net);

}  // namespace calnet
