#include "calnet/construction.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "calnet/pairing.hpp"

namespace calnet {

long BuildParams::n0() const {
  if (n0_override) {
    if (*n0_override < 1) throw std::domain_error("BuildParams: n0 must be >= 1");
    return *n0_override;
  }
  if (eps <= Rat(0) || eps >= Rat(1)) throw std::domain_error("BuildParams: eps must lie in (0,1)");
  // ceil(2/eps); makes sum_{k>=1} (k+n0)^-2 < 1/n0 <= eps/2.
  mpz_class num = 2 * eps.den();
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), eps.num().get_mpz_t());
  return q.get_si();
}

long quota_factor(int task) {
  if (task < 0) throw std::domain_error("quota_factor: negative task");
  return std::max<long>(task, 1);
}

long window_factor(int task) {
  if (task < 0) throw std::domain_error("window_factor: negative task");
  long e = quota_factor(task);
  // least m with (task+2)^m >= 2^e, i.e. ceil(e / log2(task+2)), exactly.
  mpz_class target = mpz_class(1) << e;
  mpz_class lhs = 1;
  mpz_class base = task + 2;
  long m = 0;
  while (lhs < target) {
    lhs *= base;
    ++m;
  }
  return 1 + 2 * e + m;
}

Rat fresh_delay(long stage, long n0) {
  mpz_class s = stage + n0;
  return Rat(mpz_class(1), s * s);
}

bool admissible_candidate(const ForecasterProgram& prog, const Network& net,
                          const BinarySeq& x, const BinarySeq& beta, long stage) {
  long lx = static_cast<long>(x.size());
  if (lx < 1) return false;
  long factor = window_factor(prog.task);
  if (stage < factor * lx) return false;
  if (static_cast<long>(beta.size()) != stage || !x.is_prefix_of(beta)) return false;
  for (long j = 1; j < stage; ++j) {
    if (net.delay(beta.prefix(j)) == Rat(1)) return false;
  }
  long window_end = factor * lx;
  long hard = 0;
  for (long j = lx + 1; j <= window_end; ++j) {
    EvalBit hb = hard_bit(prog, beta, static_cast<std::size_t>(j), stage);
    if (hb.is_pending()) return false;  // not computed within the stage budget
    hard += hb.get();
  }
  return hard >= quota_factor(prog.task) * lx;
}

std::optional<BinarySeq> least_candidate(const BinarySeq& x, const Network& net,
                                         const Pool& pool, long stage) {
  if (pool.empty() || x.empty()) return std::nullopt;
  int task = task_of_stage(stage, pool.size());
  if (task_of_stage(x.size(), pool.size()) != task) return std::nullopt;
  ForecasterProgram prog = pool.program(task);

  long lx = static_cast<long>(x.size());
  long factor = window_factor(task);
  long window_end = factor * lx;
  long need = quota_factor(task) * lx;
  if (stage < window_end) return std::nullopt;
  for (long j = 1; j <= lx; ++j) {
    if (net.delay(x.prefix(j)) == Rat(1)) return std::nullopt;
  }

  // Depth-first in lexicographic order; the first full-length extension
  // meeting the quota is the minimum.
  std::optional<BinarySeq> found;
  std::function<bool(const BinarySeq&, long)> dfs = [&](const BinarySeq& beta, long hard) {
    long len = static_cast<long>(beta.size());
    if (len == stage) {
      if (hard >= need) {
        found = beta;
        return true;
      }
      return false;
    }
    long j = len + 1;  // position about to be placed
    std::optional<int> hard_dir;
    if (j <= window_end) {
      EvalRat r = approx_below(prog, beta, stage);
      if (r.is_pending()) return false;  // window evaluation must finish in time
      hard_dir = (r.get() >= Rat(1, 2)) ? 0 : 1;
    }
    for (int b : {0, 1}) {
      long hard2 = hard + (hard_dir && *hard_dir == b ? 1 : 0);
      if (hard2 + std::max<long>(0, window_end - j) < need) continue;
      BinarySeq child = beta.appended(b);
      if (j < stage && net.delay(child) == Rat(1)) continue;
      if (dfs(child, hard2)) return true;
    }
    return false;
  };
  dfs(x, 0);
  return found;
}

long window_start(int task, const Network& net) {
  long barrier = 0;
  for (const auto& e : net.edges()) {
    if (e.owner >= 0 && e.owner < task)
      barrier = std::max(barrier, static_cast<long>(e.to.size()));
  }
  long m = barrier + 1;
  while (task_of_stage(m, net.pool_size()) != task) ++m;
  return m;
}

namespace {

void assign_level_delay(Network& net, long level, const Rat& value) {
  std::uint64_t lo = std::uint64_t{1} << level;
  std::uint64_t hi = std::uint64_t{2} << level;
  for (std::uint64_t idx = lo; idx < hi; ++idx) net.set_delay(idx, value);
}

void assign_subtree_delay(Network& net, const BinarySeq& x, long level, const Rat& value) {
  long span = level - static_cast<long>(x.size());
  std::uint64_t base = node_index(x);
  std::uint64_t lo = base << span;
  std::uint64_t hi = (base + 1) << span;
  for (std::uint64_t idx = lo; idx < hi; ++idx) net.set_delay(idx, value);
}

std::vector<std::size_t> annotate_hard(const ForecasterProgram& prog, const BinarySeq& beta,
                                       long from_excl, long budget) {
  std::vector<std::size_t> hard;
  for (long j = from_excl + 1; j <= static_cast<long>(beta.size()); ++j) {
    EvalBit hb = hard_bit(prog, beta, static_cast<std::size_t>(j), budget);
    if (hb.is_defined() && hb.get() == 1) hard.push_back(static_cast<std::size_t>(j));
  }
  return hard;
}

}  // namespace

void build_step(Network& net, const Pool& pool, long stage) {
  if (stage < 1 || stage > net.depth()) throw std::out_of_range("build_step: stage outside 1..depth");
  StageEvent ev;
  ev.stage = stage;
  if (pool.empty()) {
    ev.kase = 3;
    net.log_stage(std::move(ev));
    return;
  }
  int task = task_of_stage(stage, pool.size());
  ev.task = task;
  long w = window_start(task, net);

  if (w == stage) {
    ev.kase = 1;
    ev.level_delay = fresh_delay(stage, net.n0());
    assign_level_delay(net, stage, ev.level_delay);
  } else if (w < stage) {
    ev.kase = 2;
    // The processed set: delayed, edge-free nodes of this task inside the
    // window that admit a candidate endpoint. The sparse delay map is
    // ordered by level, so members come out shallowest first.
    std::vector<std::pair<BinarySeq, BinarySeq>> picks;
    for (const auto& [idx, d] : net.delays()) {
      BinarySeq x = node_seq(idx);
      long len = static_cast<long>(x.size());
      if (len < w || len >= stage) continue;
      if (task_of_stage(len, pool.size()) != task) continue;
      if (d >= Rat(1)) continue;  // map holds only nonzero delays
      if (net.edge_from(idx)) continue;
      auto beta = least_candidate(x, net, pool, stage);
      if (beta) picks.emplace_back(std::move(x), std::move(*beta));
    }
    for (const auto& [x, beta] : picks) {
      Rat d = net.delay(x);
      assign_subtree_delay(net, x, stage, d / (Rat(1) - d));
    }
    // A node chosen as an endpoint keeps zero delay even when a shallower
    // member's assignment also covers it.
    for (const auto& [x, beta] : picks) net.set_delay(beta, Rat(0));
    ForecasterProgram prog = pool.program(task);
    for (const auto& [x, beta] : picks) {
      ExtraEdge e;
      e.from = x;
      e.to = beta;
      e.weight = net.delay(x);
      e.owner = task;
      e.mount_stage = stage;
      e.window_end = window_factor(task) * static_cast<long>(x.size());
      e.hard_positions = annotate_hard(prog, beta, static_cast<long>(x.size()), stage);
      e.window_hard_count = static_cast<long>(
          std::count_if(e.hard_positions.begin(), e.hard_positions.end(),
                        [&](std::size_t j) { return static_cast<long>(j) <= e.window_end; }));
      ev.members.push_back(x);
      ev.mounted.push_back(net.add_edge(std::move(e)));
    }
    if (!picks.empty()) {
      for (int j = task + 1; j < pool.size(); ++j) ev.destroyed.push_back(j);
    }
  } else {
    ev.kase = 3;
  }
  net.log_stage(std::move(ev));

  ValidationReport rep = validate(net);
  if (!rep.ok) {
    std::ostringstream os;
    os << "stage " << stage << " left the network invalid:";
    for (const auto& issue : rep.issues) os << "\n  " << issue;
    throw std::logic_error(os.str());
  }
}

Network build_network(const BuildParams& params) {
  if (params.pool == nullptr) throw std::domain_error("build_network: pool is required");
  if (params.depth < 0 || params.depth > 24)
    throw std::domain_error("build_network: depth outside supported range");
  Network net(params.depth, params.n0(), params.pool->size());
  for (long stage = 1; stage <= params.depth; ++stage) build_step(net, *params.pool, stage);
  return net;
}

Network replay_stage_log(const Network& original) {
  Network net(original.depth(), original.n0(), original.pool_size());
  for (const StageEvent& ev : original.stage_log()) {
    if (ev.kase == 1) {
      assign_level_delay(net, ev.stage, ev.level_delay);
    } else if (ev.kase == 2) {
      if (ev.members.size() != ev.mounted.size())
        throw std::logic_error("replay: member/mount mismatch at stage " + std::to_string(ev.stage));
      for (const auto& x : ev.members) {
        Rat d = net.delay(x);
        assign_subtree_delay(net, x, ev.stage, d / (Rat(1) - d));
      }
      for (std::size_t k : ev.mounted) net.set_delay(original.edges().at(k).to, Rat(0));
      for (std::size_t k : ev.mounted) {
        const ExtraEdge& e = original.edges().at(k);
        if (e.weight != net.delay(e.from))
          throw std::logic_error("replay: edge weight differs from mount-time delay at stage " +
                                 std::to_string(ev.stage));
        std::size_t got = net.add_edge(e);
        if (got != k) throw std::logic_error("replay: edge order mismatch");
      }
    }
    net.log_stage(ev);
  }
  return net;
}

std::string stage_audit_text(const Network& net) {
  std::ostringstream os;
  for (const StageEvent& ev : net.stage_log()) {
    if (ev.kase == 1) {
      os << "stage " << ev.stage << " task " << ev.task << " start: level delay "
         << ev.level_delay.str() << "\n";
    } else if (ev.kase == 2 && !ev.mounted.empty()) {
      os << "stage " << ev.stage << " task " << ev.task << " mounts:";
      for (std::size_t k : ev.mounted) {
        const ExtraEdge& e = net.edges().at(k);
        os << " (" << e.from.str() << "->" << e.to.str() << " w=" << e.weight.str() << " hard="
           << e.window_hard_count << ")";
      }
      if (!ev.destroyed.empty()) {
        os << " destroys";
        for (int t : ev.destroyed) os << " " << t;
      }
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace calnet
