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

#include "spectrum/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spectrum/oracle.hpp"
#include "spectrum/packing.hpp"

namespace spectrum {

void GeneratorSpec::validate() const {
  if (bidders < 1) throw InputError("generator: need at least one bidder");
  if (channels < 1) throw InputError("generator: need at least one channel");
  params.validate();
  if (!(area > 0.0 && std::isfinite(area))) throw InputError("generator: area must be > 0");
  if (!(min_length > 0.0 && max_length >= min_length && std::isfinite(max_length))) {
    throw InputError("generator: need 0 < min_length <= max_length");
  }
  if (!(density >= 0.0 && density <= 1.0)) throw InputError("generator: density must be in [0, 1]");
  if (!(edge_keep >= 0.0 && edge_keep <= 1.0)) {
    throw InputError("generator: edge_keep must be in [0, 1]");
  }
  if (!(base_power > 0.0 && std::isfinite(base_power))) {
    throw InputError("generator: base_power must be > 0");
  }
  if (grid_side < 2) throw InputError("generator: grid_side must be >= 2");
}

EnvironmentKind parse_environment(std::string_view name) {
  if (name == "pc" || name == "sinr_power_control") return EnvironmentKind::kSinrPowerControl;
  if (name == "fixed" || name == "fixed-power" || name == "sinr_fixed_power") {
    return EnvironmentKind::kSinrFixedPower;
  }
  if (name == "conflict" || name == "conflict_graph") return EnvironmentKind::kConflictGraph;
  if (name == "secondary" || name == "secondary_network") {
    return EnvironmentKind::kSecondaryNetwork;
  }
  throw InputError("unknown environment '" + std::string(name) + "'");
}

namespace {

std::vector<Link> random_links(const GeneratorSpec& spec, Engine& engine) {
  std::vector<Link> links;
  for (BidderId i = 0; i < spec.bidders; ++i) {
    const Point sender{uniform_real(engine, 0.0, spec.area), uniform_real(engine, 0.0, spec.area)};
    const double length = spec.max_length > spec.min_length
                              ? uniform_real(engine, spec.min_length, spec.max_length)
                              : spec.min_length;
    const double angle = uniform_real(engine, 0.0, 2.0 * std::numbers::pi);
    links.push_back({i, sender,
                     {sender.x + length * std::cos(angle), sender.y + length * std::sin(angle)}});
  }
  return links;
}

SecondaryNetwork random_network(const GeneratorSpec& spec, Engine& engine) {
  const std::size_t side = spec.grid_side;
  const std::size_t nodes = side * side;
  std::vector<DirectedEdge> grid;
  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t c = 0; c < side; ++c) {
      const std::size_t v = r * side + c;
      if (c + 1 < side) {
        grid.push_back({v, v + 1});
        grid.push_back({v + 1, v});
      }
      if (r + 1 < side) {
        grid.push_back({v, v + side});
        grid.push_back({v + side, v});
      }
    }
  }

  std::vector<NetworkRequest> requests;
  for (BidderId i = 0; i < spec.bidders; ++i) {
    NetworkRequest req;
    req.source = uniform_below(engine, nodes);
    req.destination = uniform_below(engine, nodes - 1);
    if (req.destination >= req.source) ++req.destination;
    for (const DirectedEdge& e : grid) {
      if (bernoulli(engine, spec.edge_keep)) req.edges.push_back(e);
    }
    requests.push_back(std::move(req));
  }

  std::vector<std::pair<EdgeRef, EdgeRef>> conflicts;
  std::vector<std::pair<EdgeRef, DirectedEdge>> all;
  for (BidderId i = 0; i < requests.size(); ++i) {
    for (std::size_t e = 0; e < requests[i].edges.size(); ++e) {
      all.push_back({{i, e}, requests[i].edges[e]});
    }
  }
  for (std::size_t a = 0; a < all.size(); ++a) {
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      const DirectedEdge& x = all[a].second;
      const DirectedEdge& y = all[b].second;
      const bool near = x.from == y.from || x.from == y.to || x.to == y.from || x.to == y.to;
      if (near && bernoulli(engine, spec.density)) conflicts.emplace_back(all[a].first, all[b].first);
    }
  }
  return SecondaryNetwork(nodes, std::move(requests), std::move(conflicts));
}

}  // namespace

Instance generate_instance(const GeneratorSpec& spec, std::uint64_t seed) {
  spec.validate();
  Engine engine(seed);
  switch (spec.environment) {
    case EnvironmentKind::kSinrPowerControl:
      return Instance(random_links(spec, engine), spec.channels, spec.params, SinrPowerControl{});
    case EnvironmentKind::kSinrFixedPower:
      return Instance(random_links(spec, engine), spec.channels, spec.params,
                      SinrFixedPower{spec.scheme, spec.base_power});
    case EnvironmentKind::kConflictGraph: {
      auto links = random_links(spec, engine);
      std::vector<std::pair<BidderId, BidderId>> edges;
      for (BidderId a = 0; a < spec.bidders; ++a) {
        for (BidderId b = a + 1; b < spec.bidders; ++b) {
          if (bernoulli(engine, spec.density)) edges.emplace_back(a, b);
        }
      }
      return Instance(std::move(links), spec.channels, spec.params,
                      ConflictGraph(spec.bidders, std::move(edges)));
    }
    case EnvironmentKind::kSecondaryNetwork:
      return Instance({}, spec.channels, spec.params, random_network(spec, engine));
  }
  throw InputError("generator: unknown environment");
}

std::vector<double> generate_values(std::size_t n, std::uint64_t seed, ValueModel model,
                                    double scale) {
  if (n == 0) throw InputError("value generator: n must be >= 1");
  if (!(scale > 0.0 && std::isfinite(scale))) throw InputError("value generator: scale must be > 0");
  Engine engine(seed);
  std::vector<double> values(n);
  if (model == ValueModel::kUniform) {
    for (double& v : values) v = uniform_real(engine, 0.0, scale);
    return values;
  }
  const std::size_t top = uniform_below(engine, n);
  const double cap = n > 1 ? scale / (8.0 * static_cast<double>(n - 1)) : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = i == top ? scale : uniform_real(engine, 0.0, cap);
  }
  return values;
}

Summary summarize(std::span<const double> samples) {
  Summary s;
  s.count = samples.size();
  if (samples.empty()) return s;
  double total = 0.0;
  for (double x : samples) total += x;
  s.mean = total / static_cast<double>(s.count);
  if (s.count > 1) {
    double squares = 0.0;
    for (double x : samples) squares += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(squares / static_cast<double>(s.count - 1));
    s.std_error = s.stddev / std::sqrt(static_cast<double>(s.count));
  }
  return s;
}

// --- Truthfulness audit ---------------------------------------------------------

std::vector<double> deviation_grid(double value, double price, double best_sampled,
                                   unsigned ladder_top, double vickrey_threshold,
                                   std::size_t count, Engine& engine) {
  const double scale = std::max({value, best_sampled, vickrey_threshold, 1.0});
  const double delta = best_sampled > 0.0 ? 1e-6 * best_sampled : 1e-6 * scale;
  std::vector<double> grid{0.0,           value / 2.0,   2.0 * value, value / 4.0,
                           0.75 * value,  0.99 * value,  1.01 * value, 1.5 * value,
                           4.0 * value,   10.0 * value,  price,        price - delta,
                           price + delta, vickrey_threshold,
                           vickrey_threshold - delta, vickrey_threshold + delta};
  for (unsigned x = 0; x <= ladder_top; ++x) {
    const double rung = std::ldexp(best_sampled, -static_cast<int>(x));
    grid.push_back(rung - delta);
    grid.push_back(rung + delta);
  }
  const double span = 3.0 * scale;
  while (grid.size() < count + 4) grid.push_back(uniform_real(engine, 0.0, span));

  std::erase_if(grid, [](double b) { return !(b >= 0.0) || !std::isfinite(b); });
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  while (grid.size() < count) {
    const double extra = uniform_real(engine, 0.0, span);
    if (!std::binary_search(grid.begin(), grid.end(), extra)) {
      grid.insert(std::upper_bound(grid.begin(), grid.end(), extra), extra);
    }
  }
  return grid;
}

AuditReport audit_truthfulness(const Mechanism& mechanism, std::span<const double> true_values,
                               const AuditConfig& config, bool keep_entries) {
  if (config.tapes < 1) throw InputError("audit needs at least one tape");
  const std::size_t n = mechanism.instance().bidder_count();
  if (true_values.size() != n) throw InputError("audit: value profile size mismatch");
  const std::vector<double> truth(true_values.begin(), true_values.end());
  const auto& surviving = mechanism.surviving();
  const unsigned ladder_top = max_price_exponent(std::max<std::size_t>(surviving.size(), 1));

  AuditReport report;
  for (std::size_t t = 0; t < config.tapes; ++t) {
    const std::uint64_t tape_seed = mix_seed(config.seed, t);
    const RandomTape tape = mechanism.draw(tape_seed);
    const Outcome honest = mechanism.run(truth, tape);
    const std::vector<double> honest_utility = utility(honest, truth);
    for (BidderId i = 0; i < n; ++i) {
      if (honest_utility[i] < 0.0 || honest.payments[i] > truth[i]) {
        ++report.rationality_failures;
        break;
      }
    }

    double best_sampled = 0.0;
    for (BidderId i : surviving) {
      if (tape.stat[i]) best_sampled = std::max(best_sampled, truth[i]);
    }

    for (BidderId i = 0; i < n; ++i) {
      double threshold = 0.0;
      for (BidderId j : surviving) {
        if (j != i) threshold = std::max(threshold, truth[j]);
      }
      Engine engine(mix_seed(tape_seed, 1 + i));
      const auto grid = deviation_grid(truth[i], honest.price, best_sampled, ladder_top,
                                       threshold, config.deviations, engine);
      std::vector<double> bids = truth;
      for (double deviation : grid) {
        bids[i] = deviation;
        const Outcome lied = mechanism.run(bids, tape);
        const double lied_utility = utility(lied, truth)[i];
        const AuditEntry entry{tape_seed, i, deviation, honest_utility[i], lied_utility};
        ++report.checks;
        if (entry.gain() > 0.0) {
          ++report.violations;
          report.max_violation = std::max(report.max_violation, entry.gain());
          report.violating.push_back(entry);
        }
        if (keep_entries) report.entries.push_back(entry);
      }
    }
  }
  return report;
}

// --- Welfare experiment -----------------------------------------------------------

double welfare_floor_factor(double epsilon, double psi, std::size_t n) {
  const double log_term = static_cast<double>(ceil_log2(std::max<std::size_t>(n, 1))) + 2.0;
  return (1.0 - epsilon) * (1.0 - epsilon) * epsilon * psi / (8.0 * log_term);
}

std::optional<double> WelfareStats::ratio() const {
  if (!optimum || *optimum <= 0.0) return std::nullopt;
  return welfare.mean / *optimum;
}

std::optional<double> WelfareStats::welfare_floor() const {
  if (!optimum || !floor_factor) return std::nullopt;
  return *floor_factor * *optimum;
}

bool WelfareStats::floor_met() const {
  const auto floor = welfare_floor();
  if (!floor) return true;
  return welfare.mean >= *floor - 3.0 * welfare.std_error;
}

WelfareStats welfare_experiment(const Mechanism& mechanism, std::span<const double> values,
                                std::size_t trials, std::uint64_t seed, bool with_oracle) {
  if (trials < 1) throw InputError("welfare experiment needs at least one trial");
  WelfareStats stats;
  stats.packer = mechanism.packer().name();
  stats.bidders = std::max<std::size_t>(mechanism.surviving().size(), 1);
  stats.epsilon = mechanism.epsilon();
  stats.psi = mechanism.packer().psi();
  if (stats.psi) stats.floor_factor = welfare_floor_factor(stats.epsilon, *stats.psi, stats.bidders);
  if (with_oracle) stats.optimum = brute_force_max_welfare(mechanism.instance(), values).best_value;

  stats.welfare_per_trial.reserve(trials);
  stats.revenue_per_trial.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const Outcome outcome = mechanism.run(values, mix_seed(seed, t));
    const double welfare = outcome.welfare(values);
    const double revenue = outcome.revenue();
    if (revenue > welfare) ++stats.revenue_exceeds_welfare;
    stats.welfare_per_trial.push_back(welfare);
    stats.revenue_per_trial.push_back(revenue);
  }
  stats.welfare = summarize(stats.welfare_per_trial);
  stats.revenue = summarize(stats.revenue_per_trial);
  return stats;
}

// --- Packer quality ----------------------------------------------------------------

PsiTable measure_psi(std::string_view packer_spec, const GeneratorSpec& spec,
                     std::span<const std::uint64_t> seeds) {
  PsiTable table;
  double total = 0.0;
  for (std::uint64_t seed : seeds) {
    const Instance instance = generate_instance(spec, seed);
    const auto packer = make_packer(packer_spec, instance);
    if (table.packer.empty()) {
      table.packer = packer->name();
      table.advertised = packer->psi();
    }
    std::vector<BidderId> everyone(instance.bidder_count());
    for (BidderId i = 0; i < everyone.size(); ++i) everyone[i] = i;
    PsiRow row;
    row.seed = seed;
    row.packed = packer->pack(everyone).size();
    row.optimum = static_cast<std::size_t>(brute_force_max_cardinality(instance, everyone).best_value);
    row.ratio = row.optimum == 0 ? 1.0
                                 : static_cast<double>(row.packed) / static_cast<double>(row.optimum);
    if (table.advertised && row.ratio < *table.advertised) ++table.below_advertised;
    table.min_ratio = table.rows.empty() ? row.ratio : std::min(table.min_ratio, row.ratio);
    total += row.ratio;
    table.rows.push_back(row);
  }
  if (!table.rows.empty()) table.mean_ratio = total / static_cast<double>(table.rows.size());
  return table;
}

}  // namespace spectrum
