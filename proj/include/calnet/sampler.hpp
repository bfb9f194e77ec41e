#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "calnet/network.hpp"
#include "calnet/rng.hpp"

namespace calnet {

// Result of one generating walk: either a full-depth sequence or the node
// at which the walk halted on residual delay mass.
struct GenOutcome {
  bool reached = false;
  BinarySeq bits;

  long halt_depth() const { return static_cast<long>(bits.size()); }
};

// Random walk through a network: from each node both children are taken
// with probability (1-d)/2 each, the outgoing extra edge with its weight,
// and the walk halts with the remaining delay mass. The walk visits any
// node y with probability exactly R(y).
class Walker {
 public:
  explicit Walker(const Network& net);

  GenOutcome run(std::uint64_t seed, std::uint64_t stream = 0) const;

 private:
  struct Thresholds {
    mpz_class den;      // common denominator of the move probabilities
    mpz_class child0;   // cumulative numerators
    mpz_class child1;
    mpz_class edge;
    std::optional<std::size_t> edge_idx;
  };

  const Thresholds& at(std::uint64_t node) const;

  const Network* net_;
  mutable std::map<std::uint64_t, Thresholds> cache_;
};

GenOutcome generate(const Network& net, std::uint64_t seed);

// Exact visit probability of every node, obtained by enumerating the
// walk's branching directly. Keys are heap indices of visited nodes.
std::map<std::uint64_t, Rat> exact_visit_law(const Network& net);

std::string render_outcome(const GenOutcome& outcome);

}  // namespace calnet
