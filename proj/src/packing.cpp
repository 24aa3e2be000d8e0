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

#include "spectrum/packing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spectrum/oracle.hpp"
#include "spectrum/power.hpp"
#include "spectrum/secondary_paths.hpp"

namespace spectrum {

namespace {

void require_kind(const Instance& instance, EnvironmentKind kind, const char* what) {
  if (instance.kind() != kind) {
    throw InputError(std::string(what) + " requires a " + to_string(kind) + " instance, got " +
                     to_string(instance.kind()));
  }
}

/// Candidates in increasing link length, ties by ascending id.
std::vector<BidderId> by_length(const Instance& instance, std::span<const BidderId> candidates) {
  std::vector<BidderId> order = normalize_bidder_set(instance, candidates);
  std::stable_sort(order.begin(), order.end(), [&](BidderId a, BidderId b) {
    return instance.link(a).length() < instance.link(b).length();
  });
  return order;
}

bool meets_threshold(const Instance& instance, std::span<const BidderId> set,
                     const PowerMap& powers) {
  const double beta = instance.params().beta;
  return std::all_of(set.begin(), set.end(), [&](BidderId i) {
    return sinr_ratio(instance, i, set, powers) >= beta;
  });
}

}  // namespace

// --- SINR with power control ----------------------------------------------

double admission_threshold(const PhysicalParams& params) {
  return 1.0 / (2.0 * std::pow(3.0, params.alpha) * (4.0 * params.beta + 2.0));
}

double admission_sum(const Instance& instance, std::span<const BidderId> channel,
                     BidderId candidate) {
  const double alpha = instance.params().alpha;
  const Link& next = instance.link(candidate);
  const double next_length = next.length();
  double sum = 0.0;
  for (BidderId id : channel) {
    const Link& placed = instance.link(id);
    const double length = placed.length();
    if (!(length < next_length)) continue;
    const double scaled = std::pow(length, alpha);
    sum += scaled / std::pow(distance(placed.sender, next.receiver), alpha) +
           scaled / std::pow(distance(next.sender, placed.receiver), alpha);
  }
  return sum;
}

Allocation unweighted_packing_pc(const Instance& instance, std::span<const BidderId> candidates) {
  require_kind(instance, EnvironmentKind::kSinrPowerControl, "power-control packing");
  const double threshold = admission_threshold(instance.params());
  Allocation out = Allocation::empty(instance.channels());
  for (BidderId id : by_length(instance, candidates)) {
    for (auto& channel : out.channels) {
      if (admission_sum(instance, channel, id) <= threshold) {
        channel.push_back(id);
        break;
      }
    }
  }
  for (ChannelIndex c = 0; c < out.channels.size(); ++c) {
    if (out.channels[c].empty()) continue;
    const PowerSolveResult solved = solve_power_assignment(instance, out.channels[c]);
    if (!solved.feasible()) {
      throw std::logic_error("power-control packing selected channel " + std::to_string(c) +
                             " without a feasible power assignment");
    }
    out.powers.insert(solved.powers.begin(), solved.powers.end());
  }
  return out;
}

// --- Conflict graphs -----------------------------------------------------------

Allocation greedy_conflict_packing(const Instance& instance,
                                   std::span<const BidderId> candidates) {
  require_kind(instance, EnvironmentKind::kConflictGraph, "conflict-graph packing");
  const ConflictGraph& graph = instance.conflict_graph();
  Allocation out = Allocation::empty(instance.channels());
  for (BidderId id : normalize_bidder_set(instance, candidates)) {
    for (auto& channel : out.channels) {
      const bool clash = std::any_of(channel.begin(), channel.end(),
                                     [&](BidderId other) { return graph.adjacent(id, other); });
      if (!clash) {
        channel.push_back(id);
        break;
      }
    }
  }
  return out;
}

// --- Fixed power -----------------------------------------------------------------

bool solo_feasible_fixed_power(const Instance& instance, BidderId id) {
  const SinrFixedPower& scheme = instance.fixed_power();
  const PowerMap powers{{id, scheme.power_for(instance.link(id), instance.params().alpha)}};
  const BidderId solo[] = {id};
  return sinr_ratio(instance, id, solo, powers) >= instance.params().beta;
}

Allocation fixed_power_greedy(const Instance& instance, std::span<const BidderId> candidates) {
  require_kind(instance, EnvironmentKind::kSinrFixedPower, "fixed-power packing");
  const SinrFixedPower& scheme = instance.fixed_power();
  const double alpha = instance.params().alpha;
  Allocation out = Allocation::empty(instance.channels());
  PowerMap powers;
  for (BidderId id : by_length(instance, candidates)) {
    if (!solo_feasible_fixed_power(instance, id)) continue;
    powers[id] = scheme.power_for(instance.link(id), alpha);
    bool placed = false;
    for (auto& channel : out.channels) {
      channel.push_back(id);
      if (meets_threshold(instance, channel, powers)) {
        placed = true;
        break;
      }
      channel.pop_back();
    }
    if (placed) {
      out.powers[id] = powers[id];
    } else {
      powers.erase(id);
    }
  }
  return out;
}

// --- Secondary networks ---------------------------------------------------------

Allocation secondary_network_greedy(const Instance& instance,
                                    std::span<const BidderId> candidates) {
  require_kind(instance, EnvironmentKind::kSecondaryNetwork, "secondary-network packing");
  const SecondaryNetwork& net = instance.secondary_network();
  const std::size_t k = instance.channels();
  std::vector<int> labels(net.total_edges(), -1);

  auto free_channel = [&](std::size_t global) -> std::optional<ChannelIndex> {
    const auto& nbrs = net.conflict_neighbours(global);
    for (ChannelIndex c = 0; c < k; ++c) {
      const bool clash = std::any_of(nbrs.begin(), nbrs.end(), [&](std::size_t other) {
        return labels[other] == static_cast<int>(c);
      });
      if (!clash) return c;
    }
    return std::nullopt;
  };

  Allocation out = Allocation::empty(k);
  for (BidderId id : normalize_bidder_set(instance, candidates)) {
    const NetworkRequest& req = net.request(id);
    const auto path = shortest_path(req, net.node_count(), [&](std::size_t e) {
      return free_channel(net.global_index({id, e})).has_value();
    });
    if (!path) continue;

    // Label hop by hop so the path's own edges are respected as well.
    std::vector<PathHop> hops;
    for (std::size_t e : *path) {
      const std::size_t global = net.global_index({id, e});
      const auto c = free_channel(global);
      if (!c) break;
      labels[global] = static_cast<int>(*c);
      hops.push_back({e, *c});
    }
    if (hops.size() != path->size()) {
      for (const PathHop& hop : hops) labels[net.global_index({id, hop.edge})] = -1;
      continue;
    }
    out.channels[hops.front().channel].push_back(id);
    out.paths.emplace(id, std::move(hops));
  }
  return out;
}

// --- Multi-channel extension ------------------------------------------------------

Allocation extend_to_multichannel(const Packer& single_channel,
                                  std::span<const BidderId> candidates,
                                  const Instance& instance) {
  const Instance& sub = single_channel.instance();
  if (sub.channels() != 1) {
    throw InputError("multi-channel extension needs a single-channel sub-packer");
  }
  if (sub.kind() != instance.kind() || sub.bidder_count() != instance.bidder_count()) {
    throw InputError("sub-packer is bound to a different instance");
  }
  std::vector<BidderId> remaining = normalize_bidder_set(instance, candidates);
  Allocation out = Allocation::empty(instance.channels());
  for (ChannelIndex j = 0; j < instance.channels() && !remaining.empty(); ++j) {
    const Allocation round = single_channel.pack(remaining);
    const std::vector<BidderId> selected = round.winners();
    out.channels[j] = selected;
    for (BidderId id : selected) {
      if (const auto it = round.powers.find(id); it != round.powers.end()) {
        out.powers[id] = it->second;
      }
      if (const auto it = round.paths.find(id); it != round.paths.end()) {
        std::vector<PathHop> hops = it->second;
        for (PathHop& hop : hops) hop.channel = j;
        out.paths.emplace(id, std::move(hops));
      }
    }
    std::vector<BidderId> rest;
    std::set_difference(remaining.begin(), remaining.end(), selected.begin(), selected.end(),
                        std::back_inserter(rest));
    remaining = std::move(rest);
  }
  return out;
}

std::optional<Allocation> singleton_allocation(const Instance& instance, BidderId id) {
  if (id >= instance.bidder_count()) throw InputError("unknown bidder " + std::to_string(id));
  Allocation out = Allocation::empty(instance.channels());
  const BidderId solo[] = {id};
  switch (instance.kind()) {
    case EnvironmentKind::kSinrPowerControl: {
      const PowerSolveResult solved = solve_power_assignment(instance, solo);
      if (!solved.feasible()) return std::nullopt;
      out.powers = solved.powers;
      break;
    }
    case EnvironmentKind::kSinrFixedPower:
      if (!solo_feasible_fixed_power(instance, id)) return std::nullopt;
      out.powers[id] = instance.fixed_power().power_for(instance.link(id), instance.params().alpha);
      break;
    case EnvironmentKind::kConflictGraph:
      break;
    case EnvironmentKind::kSecondaryNetwork:
      // The search opens channels in order, so the first hop lands on channel 0.
      return find_path_allocation(instance, solo);
  }
  out.channels[0].push_back(id);
  return out;
}

// --- Packer objects ---------------------------------------------------------------

PowerControlPacker::PowerControlPacker(Instance instance) : Packer(std::move(instance)) {
  require_kind(this->instance(), EnvironmentKind::kSinrPowerControl, "pc packer");
}
Allocation PowerControlPacker::pack(std::span<const BidderId> candidates) const {
  return unweighted_packing_pc(instance(), candidates);
}

ConflictGreedyPacker::ConflictGreedyPacker(Instance instance) : Packer(std::move(instance)) {
  require_kind(this->instance(), EnvironmentKind::kConflictGraph, "conflict packer");
}
Allocation ConflictGreedyPacker::pack(std::span<const BidderId> candidates) const {
  return greedy_conflict_packing(instance(), candidates);
}

FixedPowerPacker::FixedPowerPacker(Instance instance) : Packer(std::move(instance)) {
  require_kind(this->instance(), EnvironmentKind::kSinrFixedPower, "fixed-power packer");
}
Allocation FixedPowerPacker::pack(std::span<const BidderId> candidates) const {
  return fixed_power_greedy(instance(), candidates);
}

SecondaryNetworkPacker::SecondaryNetworkPacker(Instance instance) : Packer(std::move(instance)) {
  require_kind(this->instance(), EnvironmentKind::kSecondaryNetwork, "secondary packer");
}
Allocation SecondaryNetworkPacker::pack(std::span<const BidderId> candidates) const {
  return secondary_network_greedy(instance(), candidates);
}

MultichannelPacker::MultichannelPacker(Instance instance, std::string_view sub_spec)
    : Packer(std::move(instance)) {
  if (sub_spec.starts_with("extend:")) throw InputError("nested extend packers are not supported");
  sub_ = make_packer(sub_spec, this->instance().with_channels(1));
}

Allocation MultichannelPacker::pack(std::span<const BidderId> candidates) const {
  return extend_to_multichannel(*sub_, candidates, instance());
}

std::string MultichannelPacker::name() const { return "extend:" + sub_->name(); }

std::optional<double> MultichannelPacker::psi() const {
  const auto inner = sub_->psi();
  if (!inner) return std::nullopt;
  return (1.0 - 1.0 / std::numbers::e) * *inner;
}

std::unique_ptr<Packer> make_packer(std::string_view spec, const Instance& instance) {
  if (spec == "pc") return std::make_unique<PowerControlPacker>(instance);
  if (spec == "conflict") return std::make_unique<ConflictGreedyPacker>(instance);
  if (spec == "fixed-power") return std::make_unique<FixedPowerPacker>(instance);
  if (spec == "secondary") return std::make_unique<SecondaryNetworkPacker>(instance);
  if (spec == "oracle") return std::make_unique<OraclePacker>(instance);
  if (spec.starts_with("extend:")) {
    return std::make_unique<MultichannelPacker>(instance, spec.substr(7));
  }
  throw InputError("unknown packer '" + std::string(spec) + "'");
}

std::string default_packer_for(const Instance& instance) {
  switch (instance.kind()) {
    case EnvironmentKind::kSinrPowerControl:
      return "pc";
    case EnvironmentKind::kSinrFixedPower:
      return "fixed-power";
    case EnvironmentKind::kConflictGraph:
      return "conflict";
    case EnvironmentKind::kSecondaryNetwork:
      return "secondary";
  }
  return "pc";
}

}  // namespace spectrum
