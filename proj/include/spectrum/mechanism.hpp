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
#include <optional>
#include <span>
#include <vector>

#include "spectrum/model.hpp"
#include "spectrum/packing.hpp"

namespace spectrum {

inline constexpr double kDefaultEpsilon = 0.1;

/// Every random choice of one mechanism run, materialised so a run can be
/// replayed with different bids.
struct RandomTape {
  std::uint64_t seed = 0;
  bool secprice = false;   // serve only the second-price winner
  std::vector<bool> stat;  // per bidder; true = sampled to set the price
  unsigned price_exponent = 0;

  friend bool operator==(const RandomTape&, const RandomTape&) = default;
};

/// ceil(log2 n) for n >= 1.
unsigned ceil_log2(std::size_t n);

/// Largest allowed price exponent for n bidders: ceil(log2 n) + 1.
unsigned max_price_exponent(std::size_t n);

/// Draws a tape from `seed` with a std::mt19937_64 engine, in this order: the
/// second-price coin, one sampling coin per bidder in id order, then the
/// price exponent uniform on {0, ..., ceil(log2 ladder_n) + 1}. All draws are
/// made even when the second-price coin comes up, so the layout never shifts.
RandomTape draw_tape(std::uint64_t seed, double epsilon, std::size_t bidder_count,
                     std::size_t ladder_n);

/// 2^-exponent * best_sampled_bid.
double sample_price(double best_sampled_bid, std::size_t n, unsigned exponent);

struct VickreyResult {
  BidderId winner = 0;
  double payment = 0.0;
};

/// Second-price auction for one item; ties go to the lowest id and a lone
/// bidder pays 0.
VickreyResult vickrey(std::span<const double> bids);
VickreyResult vickrey(std::span<const double> bids, std::span<const BidderId> participants);

/// Bidders that can win on their own. Feasibility is downward closed, so a
/// bidder with no feasible singleton can never win and is dropped.
std::vector<BidderId> prefilter(const Instance& instance);

struct Outcome {
  Allocation allocation;
  std::vector<double> payments;
  double price = 0.0;  // posted price; 0 in the second-price branch
  RandomTape tape;
  std::vector<BidderId> removed;  // dropped by the prefilter

  std::vector<BidderId> winners() const { return allocation.winners(); }
  double revenue() const;
  double welfare(std::span<const double> values) const;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// The random-sampling auction bound to one packer (and hence one instance).
/// Prefiltering and singleton allocations are computed once up front, so
/// repeated runs with different bids or tapes are cheap.
class Mechanism {
 public:
  explicit Mechanism(const Packer& packer, double epsilon = kDefaultEpsilon);

  const Instance& instance() const { return packer_->instance(); }
  const Packer& packer() const { return *packer_; }
  double epsilon() const { return epsilon_; }
  const std::vector<BidderId>& surviving() const { return surviving_; }
  const std::vector<BidderId>& removed() const { return removed_; }

  RandomTape draw(std::uint64_t seed) const;
  Outcome run(std::span<const double> bids, const RandomTape& tape) const;
  Outcome run(std::span<const double> bids, std::uint64_t seed) const {
    return run(bids, draw(seed));
  }

 private:
  const Packer* packer_;
  double epsilon_;
  std::vector<BidderId> surviving_;
  std::vector<BidderId> removed_;
  std::vector<std::optional<Allocation>> singletons_;
};

Outcome run_mechanism(const Instance& instance, std::span<const double> bids, double epsilon,
                      const Packer& packer, const RandomTape& tape);
Outcome run_mechanism(const Instance& instance, std::span<const double> bids, double epsilon,
                      const Packer& packer, std::uint64_t seed);

/// Quasi-linear utility: value minus payment for winners, 0 otherwise.
std::vector<double> utility(const Outcome& outcome, std::span<const double> true_values);

}  // namespace spectrum
