#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "calnet/bits.hpp"
#include "calnet/rat.hpp"

namespace calnet {

// A long edge mounted over the binary tree, carrying the delayed mass of
// its start node down to its endpoint. Hard positions are recorded at
// mount time (1-based positions into `to`).
struct ExtraEdge {
  BinarySeq from;
  BinarySeq to;
  Rat weight;
  int owner = -1;            // task that mounted the edge; -1 for hand-built nets
  long mount_stage = 0;
  long window_end = 0;       // last position of the certified hard-bit window
  long window_hard_count = 0;
  std::vector<std::size_t> hard_positions;  // 1-based into `to`
};

struct StageEvent {
  long stage = 0;
  int kase = 3;  // 1, 2 or 3
  int task = -1;
  Rat level_delay;                      // case 1 only
  std::vector<BinarySeq> members;       // case 2: the processed set, shallowest first
  std::vector<std::size_t> mounted;     // case 2: indices into edges()
  std::vector<int> destroyed;           // case 2 with mounts: tasks above the owner
};

// Tree network of a fixed finite depth: per-node flow delays (sparse; the
// default delay is 0), mounted extra edges and the stage log that produced
// them. Unit-edge weights are always (1 - d(x)) / 2 and are not stored.
class Network {
 public:
  Network() = default;
  Network(long depth, long n0, long pool_size)
      : depth_(depth), n0_(n0), pool_size_(pool_size) {}

  long depth() const { return depth_; }
  long n0() const { return n0_; }
  long pool_size() const { return pool_size_; }

  Rat delay(std::uint64_t node) const;
  Rat delay(const BinarySeq& x) const { return delay(node_index(x)); }
  void set_delay(const BinarySeq& x, const Rat& d);
  void set_delay(std::uint64_t node, const Rat& d);
  const std::map<std::uint64_t, Rat>& delays() const { return delay_; }

  const std::vector<ExtraEdge>& edges() const { return edges_; }
  std::size_t add_edge(ExtraEdge e);
  // Index of the unique extra edge leaving `node`, if any.
  std::optional<std::size_t> edge_from(std::uint64_t node) const;

  const std::vector<StageEvent>& stage_log() const { return stage_log_; }
  void log_stage(StageEvent e) { stage_log_.push_back(std::move(e)); }

  nlohmann::json to_json() const;
  static Network from_json(const nlohmann::json& j);
  static Network load_file(const std::string& path);
  void save_file(const std::string& path) const;

  // Canonical serialized form; equal networks serialize to equal bytes.
  std::string canonical_text() const;
  std::string hash() const;

 private:
  long depth_ = 0;
  long n0_ = 0;
  long pool_size_ = 0;
  std::map<std::uint64_t, Rat> delay_;  // nonzero delays only
  std::vector<ExtraEdge> edges_;
  std::map<std::uint64_t, std::size_t> edge_from_;
  std::vector<StageEvent> stage_log_;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> issues;

  void fail(std::string issue) {
    ok = false;
    issues.push_back(std::move(issue));
  }
};

// Structural validation: delay form, outflow bounds, edge shape and
// uniqueness, schedule consistency of owned edges, and the requirement
// that no extra edge crosses a fully delayed node.
ValidationReport validate(const Network& net);

std::uint64_t fnv1a64(const std::string& text);

}  // namespace calnet
