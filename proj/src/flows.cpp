#include "calnet/flows.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace calnet {

FlowSemimeasure::FlowSemimeasure(const Network& net) : net_(&net) {
  long depth = net.depth();
  if (depth < 0 || depth > 26) throw std::domain_error("FlowSemimeasure: unsupported depth");
  std::uint64_t nodes = std::uint64_t{1} << (depth + 1);
  r_.assign(nodes, Rat(0));
  q_.assign(nodes, Rat(0));

  std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, Rat>>> incoming;
  for (const auto& e : net.edges()) {
    incoming[node_index(e.to)].emplace_back(node_index(e.from), e.weight);
  }

  r_[1] = Rat(1);
  for (std::uint64_t idx = 2; idx < nodes; ++idx) {
    std::uint64_t parent = idx / 2;
    Rat val = Rat(1, 2) * (Rat(1) - net.delay(parent)) * r_[parent];
    auto it = incoming.find(idx);
    if (it != incoming.end()) {
      for (const auto& [from, w] : it->second) val += w * r_[from];
    }
    r_[idx] = val;
  }

  std::uint64_t first_leaf = std::uint64_t{1} << depth;
  for (std::uint64_t idx = nodes - 1; idx >= first_leaf; --idx) q_[idx] = r_[idx];
  for (std::uint64_t idx = first_leaf - 1; idx >= 1; --idx) {
    q_[idx] = std::max(r_[idx], q_[2 * idx] + q_[2 * idx + 1]);
  }
}

Rat FlowSemimeasure::level_sum_Q(const BinarySeq& x, long level) const {
  long base = static_cast<long>(x.size());
  if (level < base || level > net_->depth())
    throw std::out_of_range("level_sum_Q: level outside [l(x), depth]");
  std::uint64_t idx = node_index(x);
  std::uint64_t lo = idx << (level - base);
  std::uint64_t hi = (idx + 1) << (level - base);
  Rat sum(0);
  for (std::uint64_t y = lo; y < hi; ++y) sum += q_[y];
  return sum;
}

Rat FlowSemimeasure::bar_Q(const BinarySeq& x) const {
  Rat best = level_sum_Q(x, static_cast<long>(x.size()));
  for (long m = static_cast<long>(x.size()) + 1; m <= net_->depth(); ++m) {
    best = std::min(best, level_sum_Q(x, m));
  }
  return best;
}

Rat FlowSemimeasure::reach_mass(long level) const {
  if (level < 0 || level > net_->depth()) throw std::out_of_range("reach_mass: bad level");
  std::uint64_t lo = std::uint64_t{1} << level;
  std::uint64_t hi = std::uint64_t{2} << level;
  Rat sum(0);
  for (std::uint64_t y = lo; y < hi; ++y) sum += r_[y];
  return sum;
}

bool FlowSemimeasure::support_member(const BinarySeq& x) const {
  for (std::size_t len = 0; len < x.size(); ++len) {
    if (net_->delay(x.prefix(len)) == Rat(1)) return false;
  }
  return true;
}

}  // namespace calnet
