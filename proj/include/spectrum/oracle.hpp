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
#include <span>
#include <vector>

#include "spectrum/model.hpp"
#include "spectrum/packing.hpp"

namespace spectrum {

struct OracleLimits {
  std::size_t max_bidders = 14;
  std::size_t max_channels = 3;
};

struct OracleResult {
  double best_value = 0.0;
  Allocation witness;
  std::vector<BidderId> winners;
  std::uint64_t explored = 0;  // candidate sets or search nodes examined
};

/// Whether `ids` can share one channel, decided directly (power solve, fixed
/// scheme SINR, or independence in the conflict graph). Not defined for the
/// secondary-network environment.
bool single_channel_feasible(const Instance& instance, std::span<const BidderId> ids);

/// Exhaustive k-channel feasibility of every bidder subset of a small
/// instance, indexed by bitmask.
///
/// Subsets are visited in increasing mask order; a subset is tested directly
/// only when all of its one-smaller subsets are feasible. For channelised
/// environments the k-channel table is then built by splitting off the group
/// holding the lowest bidder, which enumerates each channel labelling once
/// up to relabelling of channels.
class FeasibleSetTable {
 public:
  explicit FeasibleSetTable(const Instance& instance, OracleLimits limits = {});

  const Instance& instance() const { return instance_; }
  bool feasible(std::uint32_t mask) const { return feasible_.at(mask) != 0; }
  std::uint64_t explored() const { return explored_; }

  /// Feasible allocation serving exactly the bidders in `mask`.
  Allocation realize(std::uint32_t mask) const;

 private:
  Allocation realize_channelised(std::uint32_t mask) const;

  Instance instance_;
  std::vector<std::uint8_t> single_;
  std::vector<std::uint8_t> feasible_;
  // split_[j][mask]: group taken when `mask` is served on at most j+1 channels
  // (0 means the mask already fits on j channels).
  std::vector<std::vector<std::uint32_t>> split_;
  std::uint64_t explored_ = 0;
};

/// Largest feasible subset of `candidates`; ties go to the lexicographically
/// smallest id list.
OracleResult brute_force_max_cardinality(const Instance& instance,
                                         std::span<const BidderId> candidates,
                                         OracleLimits limits = {});
OracleResult brute_force_max_cardinality(const FeasibleSetTable& table,
                                         std::span<const BidderId> candidates);

/// Maximum-welfare feasible allocation by depth-first branch and bound over
/// bidders in ascending id order, trying every channel for each included
/// bidder. Independent of FeasibleSetTable.
OracleResult brute_force_max_welfare(const Instance& instance, std::span<const double> bids,
                                     OracleLimits limits = {});

/// Exact packer (psi = 1). Precomputes the feasibility table on construction.
class OraclePacker final : public Packer {
 public:
  explicit OraclePacker(Instance instance, OracleLimits limits = {});
  Allocation pack(std::span<const BidderId> candidates) const override;
  std::string name() const override { return "oracle"; }
  std::optional<double> psi() const override { return 1.0; }

  const FeasibleSetTable& table() const { return table_; }

 private:
  FeasibleSetTable table_;
};

}  // namespace spectrum
