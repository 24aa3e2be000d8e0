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

#include "spectrum/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace spectrum {

namespace {

bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

void PhysicalParams::validate() const {
  if (!(std::isfinite(alpha) && alpha > 1.0)) {
    throw InputError("path-loss exponent alpha must be finite and > 1");
  }
  if (!(std::isfinite(beta) && beta > 0.0)) {
    throw InputError("SINR threshold beta must be finite and > 0");
  }
  if (!(std::isfinite(noise) && noise >= 0.0)) {
    throw InputError("noise must be finite and >= 0");
  }
}

std::string to_string(PowerScheme scheme) {
  switch (scheme) {
    case PowerScheme::kUniform:
      return "uniform";
    case PowerScheme::kLinear:
      return "linear";
    case PowerScheme::kSquareRoot:
      return "square_root";
  }
  return "uniform";
}

PowerScheme parse_power_scheme(const std::string& name) {
  if (name == "uniform") return PowerScheme::kUniform;
  if (name == "linear") return PowerScheme::kLinear;
  if (name == "square_root" || name == "square-root" || name == "sqrt") {
    return PowerScheme::kSquareRoot;
  }
  throw InputError("unknown power scheme '" + name + "'");
}

double SinrFixedPower::power_for(const Link& link, double alpha) const {
  switch (scheme) {
    case PowerScheme::kUniform:
      return base_power;
    case PowerScheme::kLinear:
      return base_power * std::pow(link.length(), alpha);
    case PowerScheme::kSquareRoot:
      return base_power * std::pow(link.length(), alpha / 2.0);
  }
  return base_power;
}

// --- ConflictGraph ---------------------------------------------------------

ConflictGraph::ConflictGraph(std::size_t vertex_count,
                             std::vector<std::pair<BidderId, BidderId>> edges)
    : vertex_count_(vertex_count),
      neighbours_(vertex_count),
      matrix_(vertex_count * vertex_count, 0) {
  for (auto [a, b] : edges) {
    if (a >= vertex_count || b >= vertex_count) {
      throw InputError("conflict edge references an unknown bidder");
    }
    if (a == b) throw InputError("conflict graph must be irreflexive");
    if (a > b) std::swap(a, b);
    if (matrix_[a * vertex_count + b] != 0) continue;
    matrix_[a * vertex_count + b] = 1;
    matrix_[b * vertex_count + a] = 1;
    edges_.emplace_back(a, b);
  }
  std::sort(edges_.begin(), edges_.end());
  for (auto [a, b] : edges_) {
    neighbours_[a].push_back(b);
    neighbours_[b].push_back(a);
  }
  for (auto& list : neighbours_) std::sort(list.begin(), list.end());
}

bool ConflictGraph::adjacent(BidderId a, BidderId b) const {
  if (a >= vertex_count_ || b >= vertex_count_) {
    throw InputError("conflict query references an unknown bidder");
  }
  return matrix_[a * vertex_count_ + b] != 0;
}

// --- SecondaryNetwork --------------------------------------------------------

SecondaryNetwork::SecondaryNetwork(std::size_t node_count, std::vector<NetworkRequest> requests,
                                   std::vector<std::pair<EdgeRef, EdgeRef>> conflicts)
    : node_count_(node_count), requests_(std::move(requests)) {
  if (node_count_ == 0) throw InputError("secondary network needs at least one node");
  for (std::size_t i = 0; i < requests_.size(); ++i) {
    const auto& req = requests_[i];
    if (req.source >= node_count_ || req.destination >= node_count_) {
      throw InputError("bidder " + std::to_string(i) + ": source/destination is not a node");
    }
    if (req.source == req.destination) {
      throw InputError("bidder " + std::to_string(i) + ": source equals destination");
    }
    for (const auto& e : req.edges) {
      if (e.from >= node_count_ || e.to >= node_count_) {
        throw InputError("bidder " + std::to_string(i) + ": edge endpoint is not a node");
      }
      if (e.from == e.to) {
        throw InputError("bidder " + std::to_string(i) + ": self-loop edge");
      }
    }
    offsets_.push_back(offsets_.back() + req.edges.size());
  }

  neighbours_.assign(total_edges(), {});
  std::set<std::pair<EdgeRef, EdgeRef>> unique;
  for (auto [a, b] : conflicts) {
    const std::size_t ga = global_index(a);
    const std::size_t gb = global_index(b);
    if (ga == gb) throw InputError("conflict graph H must be irreflexive");
    if (b < a) std::swap(a, b);
    if (unique.insert({a, b}).second) {
      neighbours_[ga].push_back(gb);
      neighbours_[gb].push_back(ga);
    }
  }
  conflicts_.assign(unique.begin(), unique.end());
  for (auto& list : neighbours_) std::sort(list.begin(), list.end());
}

std::size_t SecondaryNetwork::global_index(EdgeRef ref) const {
  if (ref.bidder >= requests_.size() || ref.edge >= requests_[ref.bidder].edges.size()) {
    throw InputError("edge reference (" + std::to_string(ref.bidder) + ", " +
                     std::to_string(ref.edge) + ") does not exist");
  }
  return offsets_[ref.bidder] + ref.edge;
}

EdgeRef SecondaryNetwork::edge_ref(std::size_t global) const {
  if (global >= total_edges()) throw InputError("global edge index out of range");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), global);
  const auto bidder = static_cast<BidderId>(std::distance(offsets_.begin(), it) - 1);
  return {bidder, global - offsets_[bidder]};
}

bool SecondaryNetwork::conflicting(std::size_t global_a, std::size_t global_b) const {
  const auto& list = neighbours_.at(global_a);
  return std::binary_search(list.begin(), list.end(), global_b);
}

// --- Instance ----------------------------------------------------------------

std::string to_string(EnvironmentKind kind) {
  switch (kind) {
    case EnvironmentKind::kSinrPowerControl:
      return "sinr_power_control";
    case EnvironmentKind::kSinrFixedPower:
      return "sinr_fixed_power";
    case EnvironmentKind::kConflictGraph:
      return "conflict_graph";
    case EnvironmentKind::kSecondaryNetwork:
      return "secondary_network";
  }
  return "?";
}

bool is_sinr(EnvironmentKind kind) {
  return kind == EnvironmentKind::kSinrPowerControl || kind == EnvironmentKind::kSinrFixedPower;
}

Instance::Instance(std::vector<Link> links, std::size_t channels, PhysicalParams params,
                   Environment environment)
    : links_(std::move(links)),
      channels_(channels),
      params_(params),
      environment_(std::move(environment)) {
  if (channels_ < 1) throw InputError("instance needs at least one channel");
  params_.validate();
  for (std::size_t i = 0; i < links_.size(); ++i) {
    const Link& l = links_[i];
    if (l.id != i) throw InputError("link ids must be contiguous from 0 and in order");
    if (!finite(l.sender) || !finite(l.receiver)) {
      throw InputError("link " + std::to_string(i) + " has non-finite coordinates");
    }
    if (!(l.length() > 0.0)) {
      throw InputError("link " + std::to_string(i) + ": sender coincides with receiver");
    }
  }
  std::visit(Overloaded{
                 [&](const SinrPowerControl&) {},
                 [&](const SinrFixedPower& fp) {
                   if (!(std::isfinite(fp.base_power) && fp.base_power > 0.0)) {
                     throw InputError("fixed-power base constant must be finite and > 0");
                   }
                 },
                 [&](const ConflictGraph& g) {
                   if (g.vertex_count() != links_.size()) {
                     throw InputError("conflict graph size does not match the link count");
                   }
                 },
                 [&](const SecondaryNetwork&) {
                   if (!links_.empty()) {
                     throw InputError("secondary-network instances carry no geometric links");
                   }
                 },
             },
             environment_);
  if (bidder_count() == 0) throw InputError("instance needs at least one bidder");
}

const Link& Instance::link(BidderId id) const {
  if (id >= links_.size()) throw InputError("unknown link id " + std::to_string(id));
  return links_[id];
}

EnvironmentKind Instance::kind() const {
  return static_cast<EnvironmentKind>(environment_.index());
}

std::size_t Instance::bidder_count() const {
  if (const auto* net = std::get_if<SecondaryNetwork>(&environment_)) {
    return net->bidder_count();
  }
  return links_.size();
}

const SinrFixedPower& Instance::fixed_power() const {
  if (const auto* fp = std::get_if<SinrFixedPower>(&environment_)) return *fp;
  throw InputError("instance is not a fixed-power SINR instance");
}

const ConflictGraph& Instance::conflict_graph() const {
  if (const auto* g = std::get_if<ConflictGraph>(&environment_)) return *g;
  throw InputError("instance is not a conflict-graph instance");
}

const SecondaryNetwork& Instance::secondary_network() const {
  if (const auto* n = std::get_if<SecondaryNetwork>(&environment_)) return *n;
  throw InputError("instance is not a secondary-network instance");
}

Instance Instance::with_channels(std::size_t channels) const {
  return Instance(links_, channels, params_, environment_);
}

// --- Allocation --------------------------------------------------------------

Allocation Allocation::empty(std::size_t channel_count) {
  Allocation a;
  a.channels.assign(channel_count, {});
  return a;
}

std::vector<BidderId> Allocation::winners() const {
  std::vector<BidderId> out;
  for (const auto& set : channels) out.insert(out.end(), set.begin(), set.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t Allocation::size() const { return winners().size(); }

bool Allocation::contains(BidderId id) const { return channel_of(id).has_value(); }

std::optional<ChannelIndex> Allocation::channel_of(BidderId id) const {
  for (ChannelIndex c = 0; c < channels.size(); ++c) {
    if (std::find(channels[c].begin(), channels[c].end(), id) != channels[c].end()) return c;
  }
  return std::nullopt;
}

// --- SINR and feasibility ----------------------------------------------------

double sinr_ratio(const Instance& instance, BidderId i, std::span<const BidderId> co_channel,
                  const PowerMap& powers) {
  if (std::find(co_channel.begin(), co_channel.end(), i) == co_channel.end()) {
    throw InputError("sinr_ratio: link " + std::to_string(i) + " is not in the co-channel set");
  }
  const double alpha = instance.params().alpha;
  auto power_of = [&](BidderId id) {
    const auto it = powers.find(id);
    if (it == powers.end()) {
      throw InputError("sinr_ratio: no power for link " + std::to_string(id));
    }
    if (!(it->second > 0.0) || !std::isfinite(it->second)) {
      throw InputError("sinr_ratio: power of link " + std::to_string(id) + " must be positive");
    }
    return it->second;
  };

  const Link& target = instance.link(i);
  const double signal = power_of(i) / std::pow(target.length(), alpha);
  double interference = instance.params().noise;
  for (BidderId j : co_channel) {
    if (j == i) continue;
    const Link& other = instance.link(j);
    interference += power_of(j) / std::pow(distance(other.sender, target.receiver), alpha);
  }
  if (interference == 0.0) return std::numeric_limits<double>::infinity();
  return signal / interference;
}

namespace {

void check_sinr(const Instance& instance, const Allocation& allocation, double tolerance,
                FeasibilityReport& report) {
  const double beta = instance.params().beta;
  for (ChannelIndex c = 0; c < allocation.channels.size(); ++c) {
    const auto& set = allocation.channels[c];
    for (BidderId i : set) {
      if (!allocation.powers.contains(i)) {
        throw InputError("SINR allocation is missing a power for winner " + std::to_string(i));
      }
    }
    for (BidderId i : set) {
      const double ratio = sinr_ratio(instance, i, set, allocation.powers);
      if (!(ratio >= beta - tolerance)) {
        std::ostringstream msg;
        msg << "link " << i << " on channel " << c << ": SINR " << ratio << " < beta " << beta;
        report.violations.push_back(
            {ViolationKind::kSinrBelowThreshold, c, i, std::nullopt, ratio, msg.str()});
      }
    }
  }
}

void check_conflicts(const Instance& instance, const Allocation& allocation,
                     FeasibilityReport& report) {
  const ConflictGraph& graph = instance.conflict_graph();
  for (ChannelIndex c = 0; c < allocation.channels.size(); ++c) {
    const auto& set = allocation.channels[c];
    for (std::size_t a = 0; a < set.size(); ++a) {
      for (std::size_t b = a + 1; b < set.size(); ++b) {
        if (graph.adjacent(set[a], set[b])) {
          report.violations.push_back({ViolationKind::kConflict, c, set[a], set[b], 0.0,
                                       "bidders " + std::to_string(set[a]) + " and " +
                                           std::to_string(set[b]) + " conflict on channel " +
                                           std::to_string(c)});
        }
      }
    }
  }
}

void check_paths(const Instance& instance, const Allocation& allocation,
                 FeasibilityReport& report) {
  const SecondaryNetwork& net = instance.secondary_network();
  struct Used {
    std::size_t global;
    ChannelIndex channel;
    BidderId bidder;
  };
  std::vector<Used> used;
  for (ChannelIndex c = 0; c < allocation.channels.size(); ++c) {
    for (BidderId i : allocation.channels[c]) {
      const auto it = allocation.paths.find(i);
      const NetworkRequest& req = net.request(i);
      if (it == allocation.paths.end() || it->second.empty()) {
        report.violations.push_back({ViolationKind::kBrokenPath, c, i, std::nullopt, 0.0,
                                     "winner " + std::to_string(i) + " has no path"});
        continue;
      }
      std::size_t at = req.source;
      bool connected = true;
      for (const PathHop& hop : it->second) {
        if (hop.edge >= req.edges.size()) {
          throw InputError("path of bidder " + std::to_string(i) + " uses an unknown edge");
        }
        if (hop.channel >= instance.channels()) {
          throw InputError("path of bidder " + std::to_string(i) + " uses an unknown channel");
        }
        const DirectedEdge& e = req.edges[hop.edge];
        if (e.from != at) connected = false;
        at = e.to;
        used.push_back({net.global_index({i, hop.edge}), hop.channel, i});
      }
      if (!connected || at != req.destination) {
        report.violations.push_back(
            {ViolationKind::kBrokenPath, c, i, std::nullopt, 0.0,
             "path of winner " + std::to_string(i) + " does not connect source to destination"});
      }
    }
  }
  for (std::size_t a = 0; a < used.size(); ++a) {
    for (std::size_t b = a + 1; b < used.size(); ++b) {
      if (used[a].channel == used[b].channel && net.conflicting(used[a].global, used[b].global)) {
        report.violations.push_back(
            {ViolationKind::kEdgeConflict, used[a].channel, used[a].bidder, used[b].bidder, 0.0,
             "edges of bidders " + std::to_string(used[a].bidder) + " and " +
                 std::to_string(used[b].bidder) + " conflict on channel " +
                 std::to_string(used[a].channel)});
      }
    }
  }
}

}  // namespace

FeasibilityReport check_feasible(const Instance& instance, const Allocation& allocation,
                                 double tolerance) {
  if (!(tolerance >= 0.0)) throw InputError("tolerance must be nonnegative");
  if (allocation.channels.size() > instance.channels()) {
    throw InputError("allocation uses more channels than the instance has");
  }
  FeasibilityReport report;
  std::vector<int> seen(instance.bidder_count(), -1);
  for (ChannelIndex c = 0; c < allocation.channels.size(); ++c) {
    for (BidderId i : allocation.channels[c]) {
      if (i >= instance.bidder_count()) {
        throw InputError("allocation references unknown bidder " + std::to_string(i));
      }
      if (seen[i] >= 0) {
        report.violations.push_back({ViolationKind::kDuplicateWinner, c, i,
                                     std::nullopt, 0.0,
                                     "bidder " + std::to_string(i) + " appears on channels " +
                                         std::to_string(seen[i]) + " and " + std::to_string(c)});
      }
      seen[i] = static_cast<int>(c);
    }
  }

  switch (instance.kind()) {
    case EnvironmentKind::kSinrPowerControl:
    case EnvironmentKind::kSinrFixedPower:
      check_sinr(instance, allocation, tolerance, report);
      break;
    case EnvironmentKind::kConflictGraph:
      check_conflicts(instance, allocation, report);
      break;
    case EnvironmentKind::kSecondaryNetwork:
      check_paths(instance, allocation, report);
      break;
  }
  return report;
}

bool downward_closure_probe(const Instance& instance, const Allocation& allocation,
                            BidderId removed, double tolerance) {
  const auto channel = allocation.channel_of(removed);
  if (!channel) {
    throw InputError("downward_closure_probe: bidder " + std::to_string(removed) +
                     " is not a winner");
  }
  Allocation reduced = allocation;
  auto& set = reduced.channels[*channel];
  set.erase(std::remove(set.begin(), set.end(), removed), set.end());
  reduced.powers.erase(removed);
  reduced.paths.erase(removed);
  return check_feasible(instance, reduced, tolerance).feasible();
}

std::vector<BidderId> normalize_bidder_set(const Instance& instance,
                                           std::span<const BidderId> ids) {
  std::vector<BidderId> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (!out.empty() && out.back() >= instance.bidder_count()) {
    throw InputError("candidate set references unknown bidder " + std::to_string(out.back()));
  }
  return out;
}

}  // namespace spectrum
