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

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "spectrum/harness.hpp"
#include "spectrum/model.hpp"
#include "spectrum/power.hpp"
#include "spectrum/secondary_paths.hpp"

namespace spectrum::testing {

inline Link make_link(BidderId id, double sx, double sy, double rx, double ry) {
  return {id, {sx, sy}, {rx, ry}};
}

/// Links far apart on the x axis; geometry is irrelevant for graph environments.
inline std::vector<Link> spaced_links(std::size_t n) {
  std::vector<Link> links;
  for (BidderId i = 0; i < n; ++i) {
    links.push_back(make_link(i, 1000.0 * i, 0.0, 1000.0 * i + 1.0, 0.0));
  }
  return links;
}

inline Instance conflict_instance(std::size_t n, std::vector<std::pair<BidderId, BidderId>> edges,
                                  std::size_t k = 1) {
  return Instance(spaced_links(n), k, PhysicalParams{}, ConflictGraph(n, std::move(edges)));
}

inline Instance pc_instance(std::vector<Link> links, std::size_t k = 1, PhysicalParams p = {}) {
  return Instance(std::move(links), k, p, SinrPowerControl{});
}

inline Instance secondary_instance(std::size_t nodes, std::vector<NetworkRequest> requests,
                                   std::vector<std::pair<EdgeRef, EdgeRef>> conflicts,
                                   std::size_t k = 1) {
  return Instance({}, k, PhysicalParams{},
                  SecondaryNetwork(nodes, std::move(requests), std::move(conflicts)));
}

inline GeneratorSpec spec_for(EnvironmentKind env, std::size_t n, std::size_t k) {
  GeneratorSpec spec;
  spec.environment = env;
  spec.bidders = n;
  spec.channels = k;
  if (env == EnvironmentKind::kSinrFixedPower) spec.area = 40.0;
  if (env == EnvironmentKind::kSinrPowerControl) spec.area = 30.0;
  if (env == EnvironmentKind::kConflictGraph) spec.density = 0.3;
  if (env == EnvironmentKind::kSecondaryNetwork) spec.density = 0.3;
  return spec;
}

inline constexpr EnvironmentKind kAllEnvironments[] = {
    EnvironmentKind::kSinrPowerControl, EnvironmentKind::kSinrFixedPower,
    EnvironmentKind::kConflictGraph, EnvironmentKind::kSecondaryNetwork};

/// Textbook SINR, written out without sharing code with the library.
inline double reference_sinr(const Instance& inst, BidderId i, const std::vector<BidderId>& set,
                             const PowerMap& powers) {
  const double a = inst.params().alpha;
  auto dist = [](Point p, Point q) { return std::hypot(p.x - q.x, p.y - q.y); };
  const Link& li = inst.link(i);
  const double signal = powers.at(i) / std::pow(dist(li.sender, li.receiver), a);
  double interference = inst.params().noise;
  for (BidderId j : set) {
    if (j == i) continue;
    interference += powers.at(j) / std::pow(dist(inst.link(j).sender, li.receiver), a);
  }
  return interference == 0.0 ? std::numeric_limits<double>::infinity() : signal / interference;
}

/// Single-channel feasibility of a group, decided from first principles.
inline bool reference_group_feasible(const Instance& inst, const std::vector<BidderId>& group) {
  if (group.empty()) return true;
  const double a = inst.params().alpha;
  const double beta = inst.params().beta;
  auto dist = [](Point p, Point q) { return std::hypot(p.x - q.x, p.y - q.y); };
  switch (inst.kind()) {
    case EnvironmentKind::kConflictGraph:
      for (BidderId x : group) {
        for (BidderId y : group) {
          if (x < y && inst.conflict_graph().adjacent(x, y)) return false;
        }
      }
      return true;
    case EnvironmentKind::kSinrFixedPower: {
      PowerMap powers;
      for (BidderId x : group) powers[x] = inst.fixed_power().power_for(inst.link(x), a);
      for (BidderId x : group) {
        if (reference_sinr(inst, x, group, powers) < beta) return false;
      }
      return true;
    }
    case EnvironmentKind::kSinrPowerControl: {
      const std::size_t m = group.size();
      const double noise = inst.params().noise > 0.0 ? inst.params().noise : 1.0;
      std::vector<std::vector<double>> g(m, std::vector<double>(m, 0.0));
      for (std::size_t r = 0; r < m; ++r) {
        const Link& li = inst.link(group[r]);
        for (std::size_t c = 0; c < m; ++c) {
          if (r == c) continue;
          const Link& lj = inst.link(group[c]);
          g[r][c] = std::pow(dist(lj.sender, lj.receiver), a) / std::pow(dist(lj.sender, li.receiver), a);
        }
      }
      // (I - beta G) x = beta N 1 has a positive solution iff the spectral
      // radius of beta G is below one; plain Gaussian elimination decides it.
      std::vector<std::vector<double>> a_mat(m, std::vector<double>(m + 1, 0.0));
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) a_mat[r][c] = (r == c ? 1.0 : 0.0) - beta * g[r][c];
        a_mat[r][m] = beta * noise;
      }
      for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < m; ++r) {
          if (std::abs(a_mat[r][col]) > std::abs(a_mat[piv][col])) piv = r;
        }
        if (std::abs(a_mat[piv][col]) < 1e-300) return false;
        std::swap(a_mat[piv], a_mat[col]);
        for (std::size_t r = 0; r < m; ++r) {
          if (r == col) continue;
          const double f = a_mat[r][col] / a_mat[col][col];
          for (std::size_t c = col; c <= m; ++c) a_mat[r][c] -= f * a_mat[col][c];
        }
      }
      for (std::size_t r = 0; r < m; ++r) {
        if (!(a_mat[r][m] / a_mat[r][r] > 0.0)) return false;
      }
      return true;
    }
    case EnvironmentKind::kSecondaryNetwork:
      break;
  }
  return false;
}

/// Every way to serve exactly `subset` in a secondary network: each bidder
/// picks a simple path and each hop a channel; the first witness that passes
/// check_feasible is returned.
inline bool reference_secondary_feasible(const Instance& inst, const std::vector<BidderId>& subset) {
  const SecondaryNetwork& net = inst.secondary_network();
  std::vector<std::vector<EdgePath>> options;
  for (BidderId b : subset) {
    options.push_back(simple_paths(net.request(b), net.node_count()));
    if (options.back().empty()) return false;
  }
  const std::size_t k = inst.channels();
  std::vector<std::size_t> choice(subset.size(), 0);
  std::function<bool(std::size_t, Allocation&)> pick_path;
  std::function<bool(std::size_t, std::size_t, Allocation&)> label;
  label = [&](std::size_t b, std::size_t hop, Allocation& alloc) -> bool {
    if (b == subset.size()) return check_feasible(inst, alloc).feasible();
    const EdgePath& path = options[b][choice[b]];
    if (hop == path.size()) return label(b + 1, 0, alloc);
    for (ChannelIndex c = 0; c < k; ++c) {
      alloc.paths[subset[b]].push_back({path[hop], c});
      if (hop == 0) alloc.channels[c].push_back(subset[b]);
      const bool ok = label(b, hop + 1, alloc);
      if (hop == 0) alloc.channels[c].pop_back();
      alloc.paths[subset[b]].pop_back();
      if (ok) return true;
    }
    return false;
  };
  pick_path = [&](std::size_t b, Allocation& alloc) -> bool {
    if (b == subset.size()) return label(0, 0, alloc);
    for (std::size_t p = 0; p < options[b].size(); ++p) {
      choice[b] = p;
      if (pick_path(b + 1, alloc)) return true;
    }
    return false;
  };
  Allocation alloc = Allocation::empty(k);
  return pick_path(0, alloc);
}

/// Best value over every assignment of bidders to {unserved, channel 0..k-1}.
/// Written independently of the oracle module for cross-checking.
inline double reference_best_value(const Instance& inst, const std::vector<double>& bids) {
  const std::size_t n = inst.bidder_count();
  const std::size_t k = inst.channels();
  double best = 0.0;
  if (inst.kind() == EnvironmentKind::kSecondaryNetwork) {
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
      std::vector<BidderId> subset;
      double value = 0.0;
      for (BidderId i = 0; i < n; ++i) {
        if (mask & (1U << i)) {
          subset.push_back(i);
          value += bids[i];
        }
      }
      if (value > best && reference_secondary_feasible(inst, subset)) best = value;
    }
    return best;
  }
  std::vector<std::size_t> label(n, 0);
  while (true) {
    std::vector<std::vector<BidderId>> groups(k);
    double value = 0.0;
    for (BidderId i = 0; i < n; ++i) {
      if (label[i] > 0) {
        groups[label[i] - 1].push_back(i);
        value += bids[i];
      }
    }
    if (value > best &&
        std::all_of(groups.begin(), groups.end(),
                    [&](const auto& g) { return reference_group_feasible(inst, g); })) {
      best = value;
    }
    std::size_t pos = 0;
    while (pos < n && ++label[pos] == k + 1) label[pos++] = 0;
    if (pos == n) break;
  }
  return best;
}

inline std::vector<BidderId> everyone(const Instance& inst) {
  std::vector<BidderId> ids(inst.bidder_count());
  for (BidderId i = 0; i < ids.size(); ++i) ids[i] = i;
  return ids;
}

}  // namespace spectrum::testing
