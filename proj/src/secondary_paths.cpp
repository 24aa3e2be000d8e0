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

#include "spectrum/secondary_paths.hpp"

#include <algorithm>
#include <deque>

namespace spectrum {

namespace {

std::vector<std::vector<std::size_t>> out_edges(const NetworkRequest& request,
                                                std::size_t node_count) {
  std::vector<std::vector<std::size_t>> out(node_count);
  for (std::size_t e = 0; e < request.edges.size(); ++e) out[request.edges[e].from].push_back(e);
  return out;
}

class PathLabelSearch {
 public:
  PathLabelSearch(const Instance& instance, std::vector<BidderId> bidders)
      : net_(instance.secondary_network()),
        channels_(instance.channels()),
        bidders_(std::move(bidders)),
        labels_(net_.total_edges(), -1) {
    for (BidderId b : bidders_) {
      candidates_.push_back(simple_paths(net_.request(b), net_.node_count()));
    }
    chosen_.resize(bidders_.size());
  }

  bool run() { return place(0); }

  Allocation witness() const {
    Allocation out = Allocation::empty(channels_);
    for (std::size_t k = 0; k < bidders_.size(); ++k) {
      const BidderId b = bidders_[k];
      std::vector<PathHop> hops;
      for (std::size_t e : *chosen_[k]) {
        hops.push_back({e, static_cast<ChannelIndex>(labels_[net_.global_index({b, e})])});
      }
      out.channels[hops.front().channel].push_back(b);
      out.paths.emplace(b, std::move(hops));
    }
    return out;
  }

  std::uint64_t explored() const { return explored_; }

 private:
  bool place(std::size_t k) {
    if (k == bidders_.size()) return true;
    for (const EdgePath& path : candidates_[k]) {
      chosen_[k] = &path;
      if (label(k, path, 0)) return true;
    }
    return false;
  }

  bool label(std::size_t k, const EdgePath& path, std::size_t hop) {
    if (hop == path.size()) return place(k + 1);
    const std::size_t global = net_.global_index({bidders_[k], path[hop]});
    // Channels are interchangeable: only open one new channel at a time.
    const std::size_t limit = std::min(opened_ + 1, channels_);
    for (std::size_t c = 0; c < limit; ++c) {
      ++explored_;
      const auto& nbrs = net_.conflict_neighbours(global);
      const bool clash = std::any_of(nbrs.begin(), nbrs.end(), [&](std::size_t other) {
        return labels_[other] == static_cast<int>(c);
      });
      if (clash) continue;
      labels_[global] = static_cast<int>(c);
      const std::size_t previous = opened_;
      opened_ = std::max(opened_, c + 1);
      if (label(k, path, hop + 1)) return true;
      opened_ = previous;
      labels_[global] = -1;
    }
    return false;
  }

  const SecondaryNetwork& net_;
  std::size_t channels_;
  std::vector<BidderId> bidders_;
  std::vector<std::vector<EdgePath>> candidates_;
  std::vector<const EdgePath*> chosen_;
  std::vector<int> labels_;
  std::size_t opened_ = 0;
  std::uint64_t explored_ = 0;
};

}  // namespace

std::optional<EdgePath> shortest_path(const NetworkRequest& request, std::size_t node_count,
                                      const std::function<bool(std::size_t)>& usable) {
  const auto out = out_edges(request, node_count);
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> via(node_count, kNone);
  std::vector<bool> reached(node_count, false);
  std::deque<std::size_t> queue{request.source};
  reached[request.source] = true;
  while (!queue.empty() && !reached[request.destination]) {
    const std::size_t node = queue.front();
    queue.pop_front();
    for (std::size_t e : out[node]) {
      const std::size_t next = request.edges[e].to;
      if (reached[next] || !usable(e)) continue;
      reached[next] = true;
      via[next] = e;
      queue.push_back(next);
    }
  }
  if (!reached[request.destination]) return std::nullopt;
  EdgePath path;
  for (std::size_t node = request.destination; node != request.source;) {
    const std::size_t e = via[node];
    path.push_back(e);
    node = request.edges[e].from;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<EdgePath> simple_paths(const NetworkRequest& request, std::size_t node_count,
                                   std::size_t max_paths) {
  const auto out = out_edges(request, node_count);
  std::vector<EdgePath> found;
  EdgePath current;
  std::vector<bool> on_path(node_count, false);

  auto dfs = [&](auto&& self, std::size_t node) -> void {
    if (node == request.destination) {
      if (found.size() == max_paths) {
        throw RefusalError("too many simple paths to enumerate exactly");
      }
      found.push_back(current);
      return;
    }
    on_path[node] = true;
    for (std::size_t e : out[node]) {
      const std::size_t next = request.edges[e].to;
      if (on_path[next]) continue;
      current.push_back(e);
      self(self, next);
      current.pop_back();
    }
    on_path[node] = false;
  };
  dfs(dfs, request.source);
  std::stable_sort(found.begin(), found.end(),
                   [](const EdgePath& a, const EdgePath& b) { return a.size() < b.size(); });
  return found;
}

std::optional<Allocation> find_path_allocation(const Instance& instance,
                                               std::span<const BidderId> bidders,
                                               std::uint64_t* explored) {
  PathLabelSearch search(instance, normalize_bidder_set(instance, bidders));
  const bool ok = search.run();
  if (explored != nullptr) *explored += search.explored();
  if (!ok) return std::nullopt;
  return search.witness();
}

}  // namespace spectrum
