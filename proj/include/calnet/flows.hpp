#pragma once

#include <cstdint>
#include <vector>

#include "calnet/network.hpp"

namespace calnet {

// Exact flow quantities of a network, memoized over all nodes up to the
// network depth. R is the mass the root walk delivers to each node; Q is
// the least semimeasure dominating R, with Q = R at the truncation depth.
class FlowSemimeasure {
 public:
  explicit FlowSemimeasure(const Network& net);

  const Network& network() const { return *net_; }

  const Rat& R(std::uint64_t node) const { return r_.at(node); }
  const Rat& R(const BinarySeq& y) const { return R(node_index(y)); }

  const Rat& Q(std::uint64_t node) const { return q_.at(node); }
  const Rat& Q(const BinarySeq& x) const { return Q(node_index(x)); }

  // Sum of Q over the level-`level` slice of the subtree rooted at x.
  Rat level_sum_Q(const BinarySeq& x, long level) const;

  // Measure of the interval at x: the minimum of the subtree level sums
  // of Q from l(x) down to the truncation depth.
  Rat bar_Q(const BinarySeq& x) const;

  // Probability that the generating walk survives to the given level.
  Rat reach_mass(long level) const;

  // True iff no proper ancestor of x is fully delayed; computed from the
  // delay map alone, independently of Q.
  bool support_member(const BinarySeq& x) const;

 private:
  const Network* net_;
  std::vector<Rat> r_;
  std::vector<Rat> q_;
};

}  // namespace calnet
