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
#include <string>
#include <string_view>
#include <vector>

#include "spectrum/mechanism.hpp"
#include "spectrum/model.hpp"
#include "spectrum/rng.hpp"

namespace spectrum {

/// Parameters for random instance generation.
struct GeneratorSpec {
  EnvironmentKind environment = EnvironmentKind::kSinrPowerControl;
  std::size_t bidders = 6;
  std::size_t channels = 1;
  PhysicalParams params;
  // Geometric environments: senders uniform in [0, area)^2, link lengths
  // uniform in [min_length, max_length), directions uniform.
  double area = 100.0;
  double min_length = 1.0;
  double max_length = 4.0;
  // Conflict graph: probability of each edge. Secondary network: probability
  // that two network edges sharing a grid node conflict.
  double density = 0.2;
  PowerScheme scheme = PowerScheme::kUniform;
  double base_power = 10.0;
  // Secondary network: bidders draw subgraphs of a grid_side x grid_side grid,
  // keeping each directed grid edge with probability edge_keep.
  std::size_t grid_side = 3;
  double edge_keep = 0.75;

  void validate() const;
};

EnvironmentKind parse_environment(std::string_view name);

Instance generate_instance(const GeneratorSpec& spec, std::uint64_t seed);

enum class ValueModel {
  kUniform,   // U[0, scale)
  kDominant,  // one bidder at `scale`, the rest summing to less than scale / 8
};

std::vector<double> generate_values(std::size_t n, std::uint64_t seed,
                                    ValueModel model = ValueModel::kUniform,
                                    double scale = 100.0);

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double std_error = 0.0;
};

/// Mean and sample deviation, accumulated in index order.
Summary summarize(std::span<const double> samples);

// --- Truthfulness audit -------------------------------------------------------

struct AuditConfig {
  double epsilon = kDefaultEpsilon;
  std::size_t tapes = 10;
  std::size_t deviations = 20;  // minimum per (tape, bidder)
  std::uint64_t seed = 0;
};

struct AuditEntry {
  std::uint64_t tape_seed = 0;
  BidderId bidder = 0;
  double deviation = 0.0;
  double truthful_utility = 0.0;
  double deviant_utility = 0.0;

  double gain() const { return deviant_utility - truthful_utility; }
};

struct AuditReport {
  std::vector<AuditEntry> entries;    // every comparison, when kept
  std::vector<AuditEntry> violating;  // comparisons where lying paid off
  std::size_t checks = 0;
  std::size_t violations = 0;
  double max_violation = 0.0;
  // Truthful runs in which some bidder had negative utility or paid more than it bid.
  std::size_t rationality_failures = 0;

  bool passed() const { return violations == 0 && rationality_failures == 0; }
};

/// Misreports tried for a bidder with true value `value`. Always contains
/// 0, value/2, 2 value, both sides of the realised price and of every price
/// on the ladder, and both sides of the bidder's second-price threshold; the
/// remainder up to `count` is drawn at random.
std::vector<double> deviation_grid(double value, double price, double best_sampled,
                                   unsigned ladder_top, double vickrey_threshold,
                                   std::size_t count, Engine& engine);

/// Replays the mechanism on identical tapes with one bid changed at a time
/// and compares utilities at the true values.
AuditReport audit_truthfulness(const Mechanism& mechanism, std::span<const double> true_values,
                               const AuditConfig& config, bool keep_entries = true);

// --- Welfare experiment ---------------------------------------------------------

/// (1 - eps)^2 * eps * psi / (8 * (ceil(log2 n) + 2)).
double welfare_floor_factor(double epsilon, double psi, std::size_t n);

struct WelfareStats {
  std::string packer;
  std::size_t bidders = 0;
  double epsilon = 0.0;
  std::optional<double> psi;
  Summary welfare;
  Summary revenue;
  std::optional<double> optimum;
  std::optional<double> floor_factor;
  std::size_t revenue_exceeds_welfare = 0;
  std::vector<double> welfare_per_trial;
  std::vector<double> revenue_per_trial;

  std::optional<double> ratio() const;
  /// Floor times optimum; needs both the optimum and a known psi.
  std::optional<double> welfare_floor() const;
  /// Mean welfare reaches the floor less three standard errors.
  bool floor_met() const;
};

/// Runs `trials` tapes seeded by mix_seed(seed, t) with truthful bids.
WelfareStats welfare_experiment(const Mechanism& mechanism, std::span<const double> values,
                                std::size_t trials, std::uint64_t seed, bool with_oracle);

// --- Packer quality ----------------------------------------------------------------

struct PsiRow {
  std::uint64_t seed = 0;
  std::size_t packed = 0;
  std::size_t optimum = 0;
  double ratio = 1.0;
};

struct PsiTable {
  std::string packer;
  std::optional<double> advertised;
  std::vector<PsiRow> rows;
  double min_ratio = 1.0;
  double mean_ratio = 1.0;
  std::size_t below_advertised = 0;
};

/// |packer(all bidders)| / maximum feasible cardinality, per generated instance.
PsiTable measure_psi(std::string_view packer_spec, const GeneratorSpec& spec,
                     std::span<const std::uint64_t> seeds);

}  // namespace spectrum
