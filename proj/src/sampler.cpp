#include "calnet/sampler.hpp"

#include <functional>
#include <stdexcept>

namespace calnet {

Walker::Walker(const Network& net) : net_(&net) {}

const Walker::Thresholds& Walker::at(std::uint64_t node) const {
  auto it = cache_.find(node);
  if (it != cache_.end()) return it->second;

  Rat d = net_->delay(node);
  Rat unit = (Rat(1) - d) / Rat(2);
  Rat edge_w(0);
  std::optional<std::size_t> edge_idx = net_->edge_from(node);
  if (edge_idx) edge_w = net_->edges()[*edge_idx].weight;
  Rat residue = d - edge_w;
  if (unit < Rat(0) || residue < Rat(0))
    throw std::logic_error("Walker: move probabilities at " + node_seq(node).str() +
                           " do not form a distribution");

  Thresholds t;
  mpz_class den;
  mpz_lcm(den.get_mpz_t(), unit.den().get_mpz_t(), edge_w.den().get_mpz_t());
  t.den = den;
  mpz_class unit_n = unit.num() * (den / unit.den());
  mpz_class edge_n = edge_w.num() * (den / edge_w.den());
  t.child0 = unit_n;
  t.child1 = 2 * unit_n;
  t.edge = t.child1 + edge_n;
  t.edge_idx = edge_idx;
  return cache_.emplace(node, std::move(t)).first->second;
}

GenOutcome Walker::run(std::uint64_t seed, std::uint64_t stream) const {
  CounterRng rng(seed, stream);
  GenOutcome out;
  std::uint64_t node = 1;
  while (static_cast<long>(out.bits.size()) < net_->depth()) {
    const Thresholds& t = at(node);
    mpz_class draw = rng.next_below(t.den);
    if (draw < t.child0) {
      out.bits.push_back(0);
      node = 2 * node;
    } else if (draw < t.child1) {
      out.bits.push_back(1);
      node = 2 * node + 1;
    } else if (draw < t.edge) {
      const ExtraEdge& e = net_->edges()[*t.edge_idx];
      for (std::size_t j = out.bits.size(); j < e.to.size(); ++j) out.bits.push_back(e.to.bit(j));
      node = node_index(e.to);
    } else {
      return out;  // halted on residual delay mass
    }
  }
  out.reached = true;
  return out;
}

GenOutcome generate(const Network& net, std::uint64_t seed) { return Walker(net).run(seed); }

std::map<std::uint64_t, Rat> exact_visit_law(const Network& net) {
  std::map<std::uint64_t, Rat> visit;
  std::function<void(std::uint64_t, const Rat&)> walk = [&](std::uint64_t node, const Rat& prob) {
    if (prob.is_zero()) return;
    visit[node] += prob;
    BinarySeq x = node_seq(node);
    if (static_cast<long>(x.size()) >= net.depth()) return;
    Rat d = net.delay(node);
    Rat unit = (Rat(1) - d) / Rat(2);
    walk(2 * node, prob * unit);
    walk(2 * node + 1, prob * unit);
    if (auto e = net.edge_from(node)) {
      const ExtraEdge& edge = net.edges()[*e];
      walk(node_index(edge.to), prob * edge.weight);
    }
  };
  walk(1, Rat(1));
  return visit;
}

std::string render_outcome(const GenOutcome& outcome) {
  if (outcome.reached) return "REACHED " + outcome.bits.str();
  return "HALTED " + outcome.bits.str() + " @" + std::to_string(outcome.halt_depth());
}

}  // namespace calnet
