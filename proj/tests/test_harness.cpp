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

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "spectrum/harness.hpp"
#include "spectrum/oracle.hpp"
#include "spectrum/packing.hpp"
#include "spectrum/report.hpp"
#include "support.hpp"

using namespace spectrum;
using namespace spectrum::testing;

TEST_CASE("generation is deterministic") {
  GeneratorSpec spec;
  spec.bidders = 6;
  spec.channels = 2;
  spec.params = {2.5, 1.5, 1.0};
  CHECK(generate_instance(spec, 42) == generate_instance(spec, 42));
  CHECK_FALSE(generate_instance(spec, 42) == generate_instance(spec, 43));
  for (EnvironmentKind env : kAllEnvironments) {
    const GeneratorSpec s = spec_for(env, 5, 2);
    CHECK(generate_instance(s, 7) == generate_instance(s, 7));
    CHECK(generate_instance(s, 7).kind() == env);
    CHECK(generate_instance(s, 7).bidder_count() == 5);
  }
}

TEST_CASE("generated link lengths stay within the configured range") {
  GeneratorSpec spec = spec_for(EnvironmentKind::kSinrPowerControl, 12, 1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = generate_instance(spec, seed);
    for (const Link& l : inst.links()) {
      CHECK(l.length() >= spec.min_length - 1e-9);
      CHECK(l.length() <= spec.max_length + 1e-9);
    }
  }
}

TEST_CASE("generator input errors") {
  GeneratorSpec spec;
  spec.bidders = 0;
  CHECK_THROWS_AS(generate_instance(spec, 1), InputError);
  spec.bidders = 3;
  spec.channels = 0;
  CHECK_THROWS_AS(generate_instance(spec, 1), InputError);
  spec.channels = 1;
  spec.min_length = 5.0;
  spec.max_length = 2.0;
  CHECK_THROWS_AS(generate_instance(spec, 1), InputError);
  CHECK_THROWS_AS(parse_environment("mesh"), InputError);
}

TEST_CASE("zero density gives an empty conflict graph") {
  GeneratorSpec spec = spec_for(EnvironmentKind::kConflictGraph, 9, 1);
  spec.density = 0.0;
  CHECK(generate_instance(spec, 3).conflict_graph().edges().empty());
  spec.density = 1.0;
  CHECK(generate_instance(spec, 3).conflict_graph().edges().size() == 36);
}

TEST_CASE("value models") {
  const auto uniform = generate_values(10, 5);
  CHECK(uniform.size() == 10);
  for (double v : uniform) CHECK((v >= 0.0 && v < 100.0));
  CHECK(uniform == generate_values(10, 5));
  const auto dominant = generate_values(10, 5, ValueModel::kDominant, 64.0);
  const double top = *std::max_element(dominant.begin(), dominant.end());
  double rest = -top;
  for (double v : dominant) rest += v;
  CHECK(top == 64.0);
  CHECK(rest < top / 8.0);
}

TEST_CASE("summary statistics") {
  const Summary s = summarize(std::vector<double>{1, 2, 3, 4});
  CHECK(s.count == 4);
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.stddev == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
}

TEST_CASE("deviation grid covers every required case") {
  Engine engine(1);
  const auto grid = deviation_grid(10.0, 4.0, 16.0, 3, 7.0, 20, engine);
  CHECK(grid.size() >= 20);
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  const double delta = 16e-6;
  for (double want : {0.0, 5.0, 20.0, 4.0 - delta, 4.0 + delta, 7.0 - delta, 7.0 + delta,
                      16.0 - delta, 2.0 + delta, 2.0 - delta, 8.0 + delta}) {
    CHECK(std::any_of(grid.begin(), grid.end(),
                      [&](double g) { return std::abs(g - want) < 1e-12; }));
  }
  for (double g : grid) CHECK(g >= 0.0);
}

TEST_CASE("sampled bidders gain nothing from any deviation") {
  const Instance inst = generate_instance(spec_for(EnvironmentKind::kConflictGraph, 6, 2), 12);
  const ConflictGreedyPacker packer(inst);
  const Mechanism mech(packer, 0.3);
  const auto values = generate_values(6, 12);
  const AuditReport report = audit_truthfulness(mech, values, {0.3, 20, 20, 99});
  CHECK(report.passed());
  std::size_t stat_checks = 0;
  for (const AuditEntry& e : report.entries) {
    const RandomTape tape = mech.draw(e.tape_seed);
    if (!tape.secprice && tape.stat[e.bidder]) {
      ++stat_checks;
      CHECK(e.gain() == 0.0);
    }
  }
  CHECK(stat_checks > 0);
}

TEST_CASE("overbidding past the price into a win loses money") {
  const Instance inst = conflict_instance(3, {});
  const ConflictGreedyPacker packer(inst);
  const Mechanism mech(packer, 0.1);
  RandomTape tape;
  tape.stat = {true, false, false};
  tape.price_exponent = 1;
  const std::vector<double> truth{8.0, 1.0, 6.0};
  const Outcome honest = mech.run(truth, tape);
  CHECK(honest.price == 4.0);
  CHECK_FALSE(honest.allocation.contains(1));
  const Outcome lied = mech.run(std::vector<double>{8.0, 5.0, 6.0}, tape);
  CHECK(lied.allocation.contains(1));
  CHECK(utility(lied, truth)[1] == -3.0);
  CHECK(utility(lied, truth)[1] < utility(honest, truth)[1]);
}

TEST_CASE("audits pass in every environment") {
  for (EnvironmentKind env : kAllEnvironments) {
    for (int trial = 0; trial < 5; ++trial) {
      const Instance inst = generate_instance(spec_for(env, 8, 1 + trial % 3), mix_seed(1, trial));
      const auto packer = make_packer(default_packer_for(inst), inst);
      const Mechanism mech(*packer, 0.2);
      const AuditReport report =
          audit_truthfulness(mech, generate_values(8, mix_seed(2, trial)), {0.2, 10, 20, 3}, false);
      CHECK(report.violations == 0);
      CHECK(report.rationality_failures == 0);
      CHECK(report.checks >= 10 * 8 * 20);
    }
  }
}

TEST_CASE("welfare floor factor") {
  CHECK(welfare_floor_factor(0.1, 1.0, 8) == doctest::Approx(0.81 * 0.1 / (8.0 * 5.0)));
  CHECK(welfare_floor_factor(0.1, 1.0, 1) == doctest::Approx(0.81 * 0.1 / 16.0));
}

TEST_CASE("welfare experiment with the exact packer") {
  const Instance inst = generate_instance(spec_for(EnvironmentKind::kConflictGraph, 8, 1), 2);
  const OraclePacker packer(inst);
  const Mechanism mech(packer, 0.1);
  const auto values = generate_values(8, 2);
  const WelfareStats stats = welfare_experiment(mech, values, 2000, 17, true);
  CHECK(stats.optimum.value() == doctest::Approx(brute_force_max_welfare(inst, values).best_value));
  CHECK(stats.floor_met());
  CHECK(stats.revenue_exceeds_welfare == 0);
  for (std::size_t t = 0; t < stats.welfare_per_trial.size(); ++t) {
    CHECK(stats.revenue_per_trial[t] <= stats.welfare_per_trial[t] + 1e-12);
  }
}

TEST_CASE("dominant bidder earns epsilon times its value") {
  const Instance inst = generate_instance(spec_for(EnvironmentKind::kSinrPowerControl, 6, 1), 4);
  const PowerControlPacker packer(inst);
  const Mechanism mech(packer, 0.1);
  const auto values = generate_values(6, 4, ValueModel::kDominant, 100.0);
  const WelfareStats stats = welfare_experiment(mech, values, 2000, 8, false);
  CHECK(stats.welfare.mean >= 0.1 * 100.0 - 3.0 * stats.welfare.std_error);
}

TEST_CASE("psi measurement") {
  const GeneratorSpec spec = spec_for(EnvironmentKind::kConflictGraph, 8, 2);
  const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  const PsiTable exact = measure_psi("oracle", spec, seeds);
  CHECK(exact.rows.size() == 5);
  for (const PsiRow& row : exact.rows) CHECK(row.ratio == 1.0);
  const PsiTable ext = measure_psi("extend:oracle", spec, seeds);
  CHECK(ext.below_advertised == 0);
  CHECK(ext.min_ratio >= 1.0 - std::exp(-1.0));
  const PsiTable greedy = measure_psi("conflict", spec, seeds);
  CHECK_FALSE(greedy.advertised.has_value());
  CHECK(greedy.min_ratio <= greedy.mean_ratio);
}

TEST_CASE("reports are plain text") {
  const Instance inst = generate_instance(spec_for(EnvironmentKind::kConflictGraph, 5, 1), 2);
  const OraclePacker packer(inst);
  const Mechanism mech(packer, 0.1);
  const WelfareStats stats = welfare_experiment(mech, generate_values(5, 2), 50, 3, true);
  CHECK(welfare_csv(stats).rfind("trial,", 0) == 0);
  CHECK(welfare_svg(stats).find("<svg") != std::string::npos);
  CHECK(welfare_summary(stats).find("welfare") != std::string::npos);
  CHECK(format_number(0.1) == "0.1");
}
