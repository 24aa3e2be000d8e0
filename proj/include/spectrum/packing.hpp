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

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "spectrum/model.hpp"

namespace spectrum {

/// An unweighted packing routine bound to one instance. Given a candidate set
/// M it returns a feasible allocation whose winners are a subset of M. Bids
/// are never visible to a packer.
class Packer {
 public:
  virtual ~Packer() = default;

  virtual Allocation pack(std::span<const BidderId> candidates) const = 0;
  virtual std::string name() const = 0;
  /// Advertised approximation factor, or nullopt when it is an unstated
  /// constant.
  virtual std::optional<double> psi() const { return std::nullopt; }

  const Instance& instance() const { return instance_; }

 protected:
  explicit Packer(Instance instance) : instance_(std::move(instance)) {}

 private:
  Instance instance_;
};

/// Right-hand side of the length-ordered admission test:
/// 1 / (2 * 3^alpha * (4 beta + 2)).
double admission_threshold(const PhysicalParams& params);

/// Admission sum of `candidate` against the links already on a channel. Only
/// strictly shorter links contribute.
double admission_sum(const Instance& instance, std::span<const BidderId> channel,
                     BidderId candidate);

/// Length-ordered first-fit packing for SINR with power control, followed by
/// a per-channel power solve. Throws std::logic_error if a selected channel
/// admits no power assignment.
Allocation unweighted_packing_pc(const Instance& instance, std::span<const BidderId> candidates);

/// First-fit over ascending ids on a conflict graph.
Allocation greedy_conflict_packing(const Instance& instance,
                                   std::span<const BidderId> candidates);

/// Whether a link meets the SINR threshold alone at its scheme power.
bool solo_feasible_fixed_power(const Instance& instance, BidderId id);

/// Length-ordered first-fit under a fixed power scheme.
Allocation fixed_power_greedy(const Instance& instance, std::span<const BidderId> candidates);

/// Ascending-id greedy that routes each bidder along a fewest-hop path whose
/// edges can be labelled without conflicts against committed edges.
Allocation secondary_network_greedy(const Instance& instance,
                                    std::span<const BidderId> candidates);

/// Fills channel j with the single-channel packer's output on the bidders
/// still unselected after rounds 0..j-1.
Allocation extend_to_multichannel(const Packer& single_channel,
                                  std::span<const BidderId> candidates,
                                  const Instance& instance);

/// Allocation with `id` as the only winner, or nullopt when none exists.
std::optional<Allocation> singleton_allocation(const Instance& instance, BidderId id);

class PowerControlPacker final : public Packer {
 public:
  explicit PowerControlPacker(Instance instance);
  Allocation pack(std::span<const BidderId> candidates) const override;
  std::string name() const override { return "pc"; }
};

class ConflictGreedyPacker final : public Packer {
 public:
  explicit ConflictGreedyPacker(Instance instance);
  Allocation pack(std::span<const BidderId> candidates) const override;
  std::string name() const override { return "conflict"; }
};

class FixedPowerPacker final : public Packer {
 public:
  explicit FixedPowerPacker(Instance instance);
  Allocation pack(std::span<const BidderId> candidates) const override;
  std::string name() const override { return "fixed-power"; }
};

class SecondaryNetworkPacker final : public Packer {
 public:
  explicit SecondaryNetworkPacker(Instance instance);
  Allocation pack(std::span<const BidderId> candidates) const override;
  std::string name() const override { return "secondary"; }
};

/// Runs a single-channel packer once per channel. The sub-packer is built
/// from `sub_spec` against a one-channel copy of the instance.
class MultichannelPacker final : public Packer {
 public:
  MultichannelPacker(Instance instance, std::string_view sub_spec);
  Allocation pack(std::span<const BidderId> candidates) const override;
  std::string name() const override;
  std::optional<double> psi() const override;

  const Packer& sub_packer() const { return *sub_; }

 private:
  std::unique_ptr<Packer> sub_;
};

/// Builds a packer from its CLI name: pc, conflict, fixed-power, secondary,
/// oracle or extend:<sub>.
std::unique_ptr<Packer> make_packer(std::string_view spec, const Instance& instance);

/// Packer name that matches the instance's environment.
std::string default_packer_for(const Instance& instance);

}  // namespace spectrum
