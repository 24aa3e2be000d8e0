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

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "spectrum/model.hpp"

namespace spectrum {

/// Edge indices (into a request's own edge list) from source to destination.
using EdgePath = std::vector<std::size_t>;

/// Fewest-hop path using only edges accepted by `usable`. Ties are broken by
/// edge index order, so the result is deterministic.
std::optional<EdgePath> shortest_path(const NetworkRequest& request, std::size_t node_count,
                                      const std::function<bool(std::size_t)>& usable);

/// Every simple source-destination path, shortest first. Throws RefusalError
/// when there are more than `max_paths`.
std::vector<EdgePath> simple_paths(const NetworkRequest& request, std::size_t node_count,
                                   std::size_t max_paths = 4096);

/// Exact search for paths and channel labels that serve every bidder in
/// `bidders` at once. Returns the first witness in a fixed search order.
std::optional<Allocation> find_path_allocation(const Instance& instance,
                                               std::span<const BidderId> bidders,
                                               std::uint64_t* explored = nullptr);

}  // namespace spectrum
