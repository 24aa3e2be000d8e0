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

#include "spectrum/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "spectrum/power.hpp"
#include "spectrum/secondary_paths.hpp"

namespace spectrum {

namespace {

void enforce_limits(const Instance& instance, const OracleLimits& limits) {
  if (instance.bidder_count() > limits.max_bidders || instance.bidder_count() > 30) {
    throw RefusalError("exact oracle refuses " + std::to_string(instance.bidder_count()) +
                       " bidders (limit " + std::to_string(limits.max_bidders) + ")");
  }
  if (instance.channels() > limits.max_channels) {
    throw RefusalError("exact oracle refuses " + std::to_string(instance.channels()) +
                       " channels (limit " + std::to_string(limits.max_channels) + ")");
  }
}

std::vector<BidderId> members(std::uint32_t mask) {
  std::vector<BidderId> out;
  for (BidderId i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1U) out.push_back(i);
  }
  return out;
}

std::uint32_t to_mask(std::span<const BidderId> ids) {
  std::uint32_t mask = 0;
  for (BidderId i : ids) mask |= 1U << i;
  return mask;
}

/// True when the sorted id list of `a` precedes that of `b` (equal sizes).
bool lex_less(std::uint32_t a, std::uint32_t b) {
  const std::uint32_t diff = a ^ b;
  return diff != 0 && (a & (diff & (~diff + 1))) != 0;
}

/// Allocation placing each channel's group on that channel, with powers.
Allocation allocation_from_groups(const Instance& instance,
                                  const std::vector<std::uint32_t>& groups) {
  Allocation out = Allocation::empty(instance.channels());
  for (ChannelIndex c = 0; c < groups.size(); ++c) {
    out.channels[c] = members(groups[c]);
    if (out.channels[c].empty()) continue;
    if (instance.kind() == EnvironmentKind::kSinrPowerControl) {
      const PowerSolveResult solved = solve_power_assignment(instance, out.channels[c]);
      out.powers.insert(solved.powers.begin(), solved.powers.end());
    } else if (instance.kind() == EnvironmentKind::kSinrFixedPower) {
      for (BidderId id : out.channels[c]) {
        out.powers[id] =
            instance.fixed_power().power_for(instance.link(id), instance.params().alpha);
      }
    }
  }
  return out;
}

}  // namespace

bool single_channel_feasible(const Instance& instance, std::span<const BidderId> ids) {
  if (ids.empty()) return true;
  switch (instance.kind()) {
    case EnvironmentKind::kSinrPowerControl:
      return solve_power_assignment(instance, ids).feasible();
    case EnvironmentKind::kSinrFixedPower: {
      PowerMap powers;
      for (BidderId id : ids) {
        powers[id] = instance.fixed_power().power_for(instance.link(id), instance.params().alpha);
      }
      return std::all_of(ids.begin(), ids.end(), [&](BidderId id) {
        return sinr_ratio(instance, id, ids, powers) >= instance.params().beta;
      });
    }
    case EnvironmentKind::kConflictGraph: {
      const ConflictGraph& graph = instance.conflict_graph();
      for (std::size_t a = 0; a < ids.size(); ++a) {
        for (std::size_t b = a + 1; b < ids.size(); ++b) {
          if (graph.adjacent(ids[a], ids[b])) return false;
        }
      }
      return true;
    }
    case EnvironmentKind::kSecondaryNetwork:
      break;
  }
  throw InputError("single-channel feasibility is not defined for secondary networks");
}

// --- FeasibleSetTable -------------------------------------------------------

FeasibleSetTable::FeasibleSetTable(const Instance& instance, OracleLimits limits)
    : instance_(instance) {
  enforce_limits(instance_, limits);
  const std::size_t n = instance_.bidder_count();
  const std::uint32_t full = static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
  const std::size_t size = std::size_t{1} << n;

  // Downward closure: a set is only worth testing if every one-smaller subset passed.
  auto closed_below = [](const std::vector<std::uint8_t>& table, std::uint32_t mask) {
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
      if (table[mask & ~(rest & (~rest + 1))] == 0) return false;
    }
    return true;
  };

  if (instance_.kind() == EnvironmentKind::kSecondaryNetwork) {
    feasible_.assign(size, 0);
    feasible_[0] = 1;
    for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
      if (!closed_below(feasible_, mask)) continue;
      ++explored_;
      const auto ids = members(mask);
      feasible_[mask] = find_path_allocation(instance_, ids).has_value() ? 1 : 0;
    }
    return;
  }

  single_.assign(size, 0);
  single_[0] = 1;
  for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
    if (!closed_below(single_, mask)) continue;
    ++explored_;
    single_[mask] = single_channel_feasible(instance_, members(mask)) ? 1 : 0;
  }

  std::vector<std::uint8_t> level = single_;
  for (std::size_t j = 1; j < instance_.channels(); ++j) {
    std::vector<std::uint8_t> next(size, 0);
    std::vector<std::uint32_t> split(size, 0);
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
      if (level[mask]) {
        next[mask] = 1;
      } else {
        const std::uint32_t low = mask & (~mask + 1);
        const std::uint32_t others = mask ^ low;
        // Every submask of `others`, each joined with the lowest bidder.
        for (std::uint32_t sub = others;; sub = (sub - 1) & others) {
          const std::uint32_t group = sub | low;
          if (single_[group] && level[mask ^ group]) {
            next[mask] = 1;
            split[mask] = group;
            break;
          }
          if (sub == 0) break;
        }
      }
      if (mask == full) break;
    }
    level = std::move(next);
    split_.push_back(std::move(split));
  }
  feasible_ = std::move(level);
}

Allocation FeasibleSetTable::realize(std::uint32_t mask) const {
  if (mask >= feasible_.size() || !feasible(mask)) {
    throw InputError("realize: bidder set is not feasible");
  }
  if (instance_.kind() == EnvironmentKind::kSecondaryNetwork) {
    auto found = find_path_allocation(instance_, members(mask));
    return std::move(*found);
  }
  return realize_channelised(mask);
}

Allocation FeasibleSetTable::realize_channelised(std::uint32_t mask) const {
  std::vector<std::uint32_t> groups;
  std::uint32_t rest = mask;
  for (std::size_t j = split_.size(); j > 0 && rest != 0; --j) {
    const std::uint32_t group = split_[j - 1][rest];
    if (group == 0) continue;
    groups.push_back(group);
    rest ^= group;
  }
  if (rest != 0) groups.push_back(rest);
  return allocation_from_groups(instance_, groups);
}

// --- Cardinality oracle -----------------------------------------------------

OracleResult brute_force_max_cardinality(const FeasibleSetTable& table,
                                         std::span<const BidderId> candidates) {
  const auto ids = normalize_bidder_set(table.instance(), candidates);
  const std::uint32_t universe = to_mask(ids);
  std::uint32_t best = 0;
  OracleResult result;
  result.explored = table.explored();
  for (std::uint32_t sub = universe;; sub = (sub - 1) & universe) {
    ++result.explored;
    if (table.feasible(sub)) {
      const int size = std::popcount(sub);
      const int best_size = std::popcount(best);
      if (size > best_size || (size == best_size && lex_less(sub, best))) best = sub;
    }
    if (sub == 0) break;
  }
  result.best_value = static_cast<double>(std::popcount(best));
  result.winners = members(best);
  result.witness = table.realize(best);
  return result;
}

OracleResult brute_force_max_cardinality(const Instance& instance,
                                         std::span<const BidderId> candidates,
                                         OracleLimits limits) {
  const FeasibleSetTable table(instance, limits);
  return brute_force_max_cardinality(table, candidates);
}

// --- Welfare oracle ---------------------------------------------------------

namespace {

class WelfareSearch {
 public:
  WelfareSearch(const Instance& instance, std::span<const double> bids)
      : instance_(instance),
        bids_(bids.begin(), bids.end()),
        n_(instance.bidder_count()),
        k_(instance.channels()),
        suffix_(n_ + 1, 0.0),
        memo_(std::size_t{1} << n_, -1),
        groups_(k_, 0) {
    for (std::size_t i = n_; i > 0; --i) suffix_[i - 1] = suffix_[i] + bids_[i - 1];
    memo_[0] = 1;
  }

  OracleResult run() {
    if (instance_.kind() == EnvironmentKind::kSecondaryNetwork) {
      search_sets(0, 0, 0.0);
    } else {
      search_channels(0, 0, 0.0);
    }
    OracleResult result;
    result.best_value = best_value_;
    result.explored = explored_;
    std::uint32_t all = 0;
    for (std::uint32_t g : best_groups_) all |= g;
    result.winners = members(all);
    if (instance_.kind() == EnvironmentKind::kSecondaryNetwork) {
      result.witness = *find_path_allocation(instance_, result.winners);
    } else {
      result.witness = allocation_from_groups(instance_, best_groups_);
    }
    return result;
  }

 private:
  // Memoised; a set is checked directly only if every one-smaller subset fits.
  bool fits(std::uint32_t mask) {
    if (memo_[mask] < 0) {
      std::int8_t verdict = 1;
      for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
        if (!fits(mask & ~(rest & (~rest + 1)))) {
          verdict = 0;
          break;
        }
      }
      if (verdict == 1) {
        const auto ids = members(mask);
        verdict = instance_.kind() == EnvironmentKind::kSecondaryNetwork
                      ? (find_path_allocation(instance_, ids).has_value() ? 1 : 0)
                      : (single_channel_feasible(instance_, ids) ? 1 : 0);
      }
      memo_[mask] = verdict;
    }
    return memo_[mask] == 1;
  }

  void record(double value) {
    if (value > best_value_) {
      best_value_ = value;
      best_groups_ = groups_;
    }
  }

  // Channelised environments: each included bidder goes on one channel; only
  // the next unopened channel is tried to skip relabelled duplicates.
  void search_channels(std::size_t i, std::size_t opened, double value) {
    ++explored_;
    record(value);
    if (i == n_ || value + suffix_[i] <= best_value_) return;
    const std::uint32_t bit = 1U << i;
    for (std::size_t c = 0; c < std::min(opened + 1, k_); ++c) {
      if (!fits(groups_[c] | bit)) continue;
      groups_[c] |= bit;
      search_channels(i + 1, std::max(opened, c + 1), value + bids_[i]);
      groups_[c] &= ~bit;
    }
    search_channels(i + 1, opened, value);
  }

  // Secondary networks: channels live on edges, so only the served set is
  // branched on and each candidate set is checked by exact path search.
  void search_sets(std::size_t i, std::uint32_t served, double value) {
    ++explored_;
    groups_[0] = served;
    record(value);
    if (i == n_ || value + suffix_[i] <= best_value_) return;
    const std::uint32_t bit = 1U << i;
    if (fits(served | bit)) search_sets(i + 1, served | bit, value + bids_[i]);
    search_sets(i + 1, served, value);
  }

  const Instance& instance_;
  std::vector<double> bids_;
  std::size_t n_;
  std::size_t k_;
  std::vector<double> suffix_;
  std::vector<std::int8_t> memo_;
  std::vector<std::uint32_t> groups_;
  std::vector<std::uint32_t> best_groups_;
  double best_value_ = -1.0;
  std::uint64_t explored_ = 0;
};

}  // namespace

OracleResult brute_force_max_welfare(const Instance& instance, std::span<const double> bids,
                                     OracleLimits limits) {
  enforce_limits(instance, limits);
  if (bids.size() != instance.bidder_count()) {
    throw InputError("bid profile size does not match the bidder count");
  }
  for (double b : bids) {
    if (!(std::isfinite(b) && b >= 0.0)) throw InputError("bids must be finite and nonnegative");
  }
  return WelfareSearch(instance, bids).run();
}

// --- OraclePacker -------------------------------------------------------------

OraclePacker::OraclePacker(Instance instance, OracleLimits limits)
    : Packer(instance), table_(std::move(instance), limits) {}

Allocation OraclePacker::pack(std::span<const BidderId> candidates) const {
  return brute_force_max_cardinality(table_, candidates).witness;
}

}  // namespace spectrum
