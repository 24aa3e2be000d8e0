// Copyright 2026 The Spectrum Auction Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace spectrum {

using BidderId = std::size_t;
using ChannelIndex = std::size_t;
using PowerMap = std::map<BidderId, double>;

/// Malformed or out-of-contract input supplied by a caller.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exact solver declined to run because the instance exceeds its limits.
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default absolute slack on SINR comparisons in feasibility checks.
inline constexpr double kDefaultTolerance = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b);

struct Link {
  BidderId id = 0;
  Point sender;
  Point receiver;

  double length() const { return distance(sender, receiver); }

  friend bool operator==(const Link&, const Link&) = default;
};

struct PhysicalParams {
  double alpha = 2.0;  // path-loss exponent
  double beta = 1.0;   // SINR threshold
  double noise = 1.0;  // ambient noise

  void validate() const;

  friend bool operator==(const PhysicalParams&, const PhysicalParams&) = default;
};

enum class PowerScheme { kUniform, kLinear, kSquareRoot };

std::string to_string(PowerScheme scheme);
PowerScheme parse_power_scheme(const std::string& name);

struct SinrPowerControl {
  friend bool operator==(const SinrPowerControl&, const SinrPowerControl&) = default;
};

struct SinrFixedPower {
  PowerScheme scheme = PowerScheme::kUniform;
  double base_power = 1.0;

  /// Transmit power the scheme assigns to `link`.
  double power_for(const Link& link, double alpha) const;

  friend bool operator==(const SinrFixedPower&, const SinrFixedPower&) = default;
};

/// Symmetric, irreflexive conflict relation over bidders.
class ConflictGraph {
 public:
  ConflictGraph() = default;
  ConflictGraph(std::size_t vertex_count,
                std::vector<std::pair<BidderId, BidderId>> edges);

  std::size_t vertex_count() const { return vertex_count_; }
  bool adjacent(BidderId a, BidderId b) const;
  /// Canonical edge list: each edge once as (low, high), sorted.
  const std::vector<std::pair<BidderId, BidderId>>& edges() const { return edges_; }
  const std::vector<BidderId>& neighbours(BidderId v) const { return neighbours_.at(v); }

  friend bool operator==(const ConflictGraph& a, const ConflictGraph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t vertex_count_ = 0;
  std::vector<std::pair<BidderId, BidderId>> edges_;
  std::vector<std::vector<BidderId>> neighbours_;
  std::vector<std::uint8_t> matrix_;
};

struct DirectedEdge {
  std::size_t from = 0;
  std::size_t to = 0;

  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

/// One secondary network: a directed graph G_i over the shared node
/// universe and the pair it wants connected.
struct NetworkRequest {
  std::size_t source = 0;
  std::size_t destination = 0;
  std::vector<DirectedEdge> edges;

  friend bool operator==(const NetworkRequest&, const NetworkRequest&) = default;
};

/// Names edge `edge` of bidder `bidder`'s graph.
struct EdgeRef {
  BidderId bidder = 0;
  std::size_t edge = 0;

  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

/// Secondary-network environment: bidders own graphs, and a global conflict
/// graph H relates the edges of all of them.
class SecondaryNetwork {
 public:
  SecondaryNetwork() = default;
  SecondaryNetwork(std::size_t node_count, std::vector<NetworkRequest> requests,
                   std::vector<std::pair<EdgeRef, EdgeRef>> conflicts);

  std::size_t node_count() const { return node_count_; }
  std::size_t bidder_count() const { return requests_.size(); }
  const std::vector<NetworkRequest>& requests() const { return requests_; }
  const NetworkRequest& request(BidderId i) const { return requests_.at(i); }
  /// Canonical conflict list, each pair once with first < second, sorted.
  const std::vector<std::pair<EdgeRef, EdgeRef>>& conflicts() const { return conflicts_; }

  std::size_t total_edges() const { return offsets_.back(); }
  std::size_t global_index(EdgeRef ref) const;
  EdgeRef edge_ref(std::size_t global) const;
  bool conflicting(std::size_t global_a, std::size_t global_b) const;
  const std::vector<std::size_t>& conflict_neighbours(std::size_t global) const {
    return neighbours_.at(global);
  }

  friend bool operator==(const SecondaryNetwork& a, const SecondaryNetwork& b) {
    return a.node_count_ == b.node_count_ && a.requests_ == b.requests_ &&
           a.conflicts_ == b.conflicts_;
  }

 private:
  std::size_t node_count_ = 0;
  std::vector<NetworkRequest> requests_;
  std::vector<std::pair<EdgeRef, EdgeRef>> conflicts_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::vector<std::size_t>> neighbours_;
};

using Environment =
    std::variant<SinrPowerControl, SinrFixedPower, ConflictGraph, SecondaryNetwork>;

enum class EnvironmentKind { kSinrPowerControl, kSinrFixedPower, kConflictGraph, kSecondaryNetwork };

std::string to_string(EnvironmentKind kind);
bool is_sinr(EnvironmentKind kind);

/// An auction instance. Immutable once constructed; the constructor enforces
/// every structural invariant and throws InputError otherwise.
class Instance {
 public:
  Instance(std::vector<Link> links, std::size_t channels, PhysicalParams params,
           Environment environment);

  const std::vector<Link>& links() const { return links_; }
  const Link& link(BidderId id) const;
  std::size_t channels() const { return channels_; }
  const PhysicalParams& params() const { return params_; }
  const Environment& environment() const { return environment_; }
  EnvironmentKind kind() const;

  /// Number of bidders n. Links for geometric environments, networks for the
  /// secondary-network environment.
  std::size_t bidder_count() const;

  const SinrFixedPower& fixed_power() const;
  const ConflictGraph& conflict_graph() const;
  const SecondaryNetwork& secondary_network() const;

  /// Same instance with a different channel count.
  Instance with_channels(std::size_t channels) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<Link> links_;
  std::size_t channels_;
  PhysicalParams params_;
  Environment environment_;
};

struct PathHop {
  std::size_t edge = 0;  // index into the bidder's own edge list
  ChannelIndex channel = 0;

  friend bool operator==(const PathHop&, const PathHop&) = default;
};

/// Winner sets L_1..L_k (0-based here), plus powers for SINR environments and
/// channel-labelled paths for the secondary-network environment.
struct Allocation {
  std::vector<std::vector<BidderId>> channels;
  PowerMap powers;
  std::map<BidderId, std::vector<PathHop>> paths;

  static Allocation empty(std::size_t channel_count);

  /// Sorted union of all winner sets.
  std::vector<BidderId> winners() const;
  std::size_t size() const;
  bool contains(BidderId id) const;
  std::optional<ChannelIndex> channel_of(BidderId id) const;

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

enum class ViolationKind {
  kSinrBelowThreshold,
  kConflict,
  kDuplicateWinner,
  kBrokenPath,
  kEdgeConflict,
};

struct Violation {
  ViolationKind kind;
  ChannelIndex channel = 0;
  BidderId bidder = 0;
  std::optional<BidderId> other;
  double value = 0.0;  // achieved SINR for kSinrBelowThreshold
  std::string message;
};

struct FeasibilityReport {
  std::vector<Violation> violations;

  bool feasible() const { return violations.empty(); }
  explicit operator bool() const { return feasible(); }
};

/// SINR of link `i` when the links in `co_channel` transmit at `powers`.
/// Returns +infinity when noise is zero and nothing interferes.
double sinr_ratio(const Instance& instance, BidderId i, std::span<const BidderId> co_channel,
                  const PowerMap& powers);

FeasibilityReport check_feasible(const Instance& instance, const Allocation& allocation,
                                 double tolerance = kDefaultTolerance);

/// Deletes `removed` (with its power and path) and re-checks feasibility.
bool downward_closure_probe(const Instance& instance, const Allocation& allocation,
                            BidderId removed, double tolerance = kDefaultTolerance);

/// Sorted, de-duplicated copy of `ids`; throws InputError on unknown ids.
std::vector<BidderId> normalize_bidder_set(const Instance& instance, std::span<const BidderId> ids);

}  // namespace spectrum
