#include "calnet/network.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "calnet/pairing.hpp"

namespace calnet {

using nlohmann::json;

Rat Network::delay(std::uint64_t node) const {
  auto it = delay_.find(node);
  return it == delay_.end() ? Rat(0) : it->second;
}

void Network::set_delay(const BinarySeq& x, const Rat& d) { set_delay(node_index(x), d); }

void Network::set_delay(std::uint64_t node, const Rat& d) {
  if (d.is_zero())
    delay_.erase(node);
  else
    delay_[node] = d;
}

std::size_t Network::add_edge(ExtraEdge e) {
  std::uint64_t from = node_index(e.from);
  edges_.push_back(std::move(e));
  edge_from_[from] = edges_.size() - 1;
  return edges_.size() - 1;
}

std::optional<std::size_t> Network::edge_from(std::uint64_t node) const {
  auto it = edge_from_.find(node);
  if (it == edge_from_.end()) return std::nullopt;
  return it->second;
}

json Network::to_json() const {
  json j;
  j["version"] = 1;
  j["depth"] = depth_;
  j["n0"] = n0_;
  j["pool_size"] = pool_size_;
  json delays = json::object();
  for (const auto& [node, d] : delay_) delays[node_seq(node).str()] = d.str();
  j["delays"] = delays;
  json edges = json::array();
  for (const auto& e : edges_) {
    json je;
    je["from"] = e.from.str();
    je["to"] = e.to.str();
    je["weight"] = e.weight.str();
    je["owner"] = e.owner;
    je["mount_stage"] = e.mount_stage;
    je["window_end"] = e.window_end;
    je["window_hard_count"] = e.window_hard_count;
    je["hard_positions"] = e.hard_positions;
    edges.push_back(je);
  }
  j["edges"] = edges;
  json log = json::array();
  for (const auto& ev : stage_log_) {
    json je;
    je["stage"] = ev.stage;
    je["case"] = ev.kase;
    je["task"] = ev.task;
    if (ev.kase == 1) je["delay"] = ev.level_delay.str();
    if (ev.kase == 2) {
      json members = json::array();
      for (const auto& m : ev.members) members.push_back(m.str());
      je["members"] = members;
      je["mounted"] = ev.mounted;
      je["destroyed"] = ev.destroyed;
    }
    log.push_back(je);
  }
  j["stage_log"] = log;
  return j;
}

Network Network::from_json(const json& j) {
  Network net(j.at("depth").get<long>(), j.at("n0").get<long>(),
              j.value("pool_size", 0L));
  for (const auto& [key, val] : j.at("delays").items()) {
    net.set_delay(BinarySeq::parse(key), Rat::parse(val.get<std::string>()));
  }
  for (const auto& je : j.at("edges")) {
    ExtraEdge e;
    e.from = BinarySeq::parse(je.at("from").get<std::string>());
    e.to = BinarySeq::parse(je.at("to").get<std::string>());
    e.weight = Rat::parse(je.at("weight").get<std::string>());
    e.owner = je.value("owner", -1);
    e.mount_stage = je.value("mount_stage", 0L);
    e.window_end = je.value("window_end", 0L);
    e.window_hard_count = je.value("window_hard_count", 0L);
    if (je.contains("hard_positions"))
      e.hard_positions = je.at("hard_positions").get<std::vector<std::size_t>>();
    net.add_edge(std::move(e));
  }
  if (j.contains("stage_log")) {
    for (const auto& je : j.at("stage_log")) {
      StageEvent ev;
      ev.stage = je.at("stage").get<long>();
      ev.kase = je.at("case").get<int>();
      ev.task = je.value("task", -1);
      if (je.contains("delay")) ev.level_delay = Rat::parse(je.at("delay").get<std::string>());
      if (je.contains("members")) {
        for (const auto& m : je.at("members")) ev.members.push_back(BinarySeq::parse(m.get<std::string>()));
      }
      if (je.contains("mounted")) ev.mounted = je.at("mounted").get<std::vector<std::size_t>>();
      if (je.contains("destroyed")) ev.destroyed = je.at("destroyed").get<std::vector<int>>();
      net.log_stage(std::move(ev));
    }
  }
  return net;
}

Network Network::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("network: cannot open " + path);
  json j;
  in >> j;
  return from_json(j);
}

void Network::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("network: cannot write " + path);
  out << canonical_text();
}

std::string Network::canonical_text() const { return to_json().dump(1) + "\n"; }

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::string Network::hash() const {
  std::ostringstream os;
  os << std::hex << fnv1a64(canonical_text());
  return os.str();
}

ValidationReport validate(const Network& net) {
  ValidationReport report;

  // Delays must be 0 (absent) or 1/k for an integer k >= 1.
  for (const auto& [node, d] : net.delays()) {
    BinarySeq x = node_seq(node);
    if (static_cast<long>(x.size()) > net.depth())
      report.fail("delay on node beyond depth: " + x.str());
    if (d.num() != 1 || d.den() < 1)
      report.fail("delay at " + x.str() + " is not of the form 1/k: " + d.str());
    if (d > Rat(1)) report.fail("delay at " + x.str() + " exceeds 1");
  }

  // Edge shape, per-node uniqueness and outflow bounds.
  std::map<std::uint64_t, Rat> outgoing;
  std::map<std::uint64_t, int> out_count;
  for (const auto& e : net.edges()) {
    std::string label = "(" + e.from.str() + "," + e.to.str() + ")";
    if (!e.from.is_proper_prefix_of(e.to)) report.fail("edge " + label + ": start is not a proper prefix of end");
    if (e.to.size() < e.from.size() + 2) report.fail("edge " + label + ": length must be >= 2");
    if (static_cast<long>(e.to.size()) > net.depth()) report.fail("edge " + label + ": endpoint beyond depth");
    if (e.weight < Rat(0)) report.fail("edge " + label + ": negative weight");
    std::uint64_t from = node_index(e.from);
    outgoing[from] += e.weight;
    if (++out_count[from] > 1) report.fail("node " + e.from.str() + " has more than one outgoing extra edge");

    if (e.owner >= 0) {
      if (net.pool_size() <= 0) {
        report.fail("edge " + label + ": owned edge in a network without a pool");
      } else if (e.from.empty()) {
        report.fail("edge " + label + ": owned edge cannot start at the root");
      } else {
        int t1 = task_of_stage(e.from.size(), net.pool_size());
        int t2 = task_of_stage(e.to.size(), net.pool_size());
        if (t1 != e.owner || t2 != e.owner)
          report.fail("edge " + label + ": schedule mismatch, tasks " + std::to_string(t1) + "/" +
                      std::to_string(t2) + " vs owner " + std::to_string(e.owner));
      }
      if (e.weight != net.delay(e.from))
        report.fail("edge " + label + ": weight differs from the start node delay");
    }

    // No edge may cross a fully delayed node.
    for (std::size_t len = e.from.size() + 1; len < e.to.size(); ++len) {
      if (net.delay(e.to.prefix(len)) == Rat(1))
        report.fail("edge " + label + " crosses fully delayed node " + e.to.prefix(len).str());
    }
  }
  for (const auto& [node, w] : outgoing) {
    // Total outflow: two unit edges (1 - d)/2 each plus extra-edge weights.
    Rat d = net.delay(node);
    if (Rat(1) - d + w > Rat(1))
      report.fail("outflow bound violated at " + node_seq(node).str());
  }

  return report;
}

}  // namespace calnet
