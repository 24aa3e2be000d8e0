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

#include <cmath>

#include "doctest.h"
#include "spectrum/oracle.hpp"
#include "spectrum/packing.hpp"
#include "support.hpp"

using namespace spectrum;
using namespace spectrum::testing;

TEST_CASE("lone bidder") {
  const Instance inst = pc_instance({make_link(0, 0, 0, 1, 0)});
  const OracleResult r = brute_force_max_welfare(inst, std::vector<double>{7.0});
  CHECK(r.best_value == 7.0);
  CHECK(r.winners == std::vector<BidderId>{0});
  CHECK(check_feasible(inst, r.witness).feasible());
}

TEST_CASE("triangle with bids 3, 2, 2") {
  const Instance inst = conflict_instance(3, {{0, 1}, {1, 2}, {0, 2}});
  const OracleResult r = brute_force_max_welfare(inst, std::vector<double>{3.0, 2.0, 2.0});
  CHECK(r.best_value == 3.0);
  CHECK(r.winners == std::vector<BidderId>{0});
}

TEST_CASE("cardinality examples") {
  const Instance path = conflict_instance(3, {{0, 1}, {1, 2}});
  CHECK(brute_force_max_cardinality(path, std::vector<BidderId>{}).best_value == 0.0);
  const OracleResult r = brute_force_max_cardinality(path, everyone(path));
  CHECK(r.best_value == 2.0);
  CHECK(r.winners == std::vector<BidderId>{0, 2});
}

TEST_CASE("ties go to the lexicographically smallest set") {
  const Instance inst = conflict_instance(4, {{0, 1}, {2, 3}});
  CHECK(brute_force_max_cardinality(inst, everyone(inst)).winners ==
        std::vector<BidderId>{0, 2});
  const Instance star = conflict_instance(3, {{0, 1}, {0, 2}, {1, 2}});
  CHECK(brute_force_max_cardinality(star, std::vector<BidderId>{2, 1}).winners ==
        std::vector<BidderId>{1});
}

TEST_CASE("welfare oracle matches an independent enumeration") {
  Engine rng(5);
  for (EnvironmentKind env : kAllEnvironments) {
    const std::size_t n = env == EnvironmentKind::kSecondaryNetwork ? 4 : 7;
    for (int trial = 0; trial < 12; ++trial) {
      GeneratorSpec spec = spec_for(env, n, 1 + trial % 2);
      if (env == EnvironmentKind::kSecondaryNetwork) spec.grid_side = 2;
      if (env == EnvironmentKind::kSinrPowerControl) spec.area = 10.0;
      const Instance inst = generate_instance(spec, mix_seed(300, trial));
      INFO(to_string(env), " trial ", trial);
      std::vector<double> bids(n);
      for (double& b : bids) b = uniform_real(rng, 0.0, 10.0);
      const OracleResult r = brute_force_max_welfare(inst, bids);
      CHECK(r.best_value == doctest::Approx(reference_best_value(inst, bids)));
      CHECK(check_feasible(inst, r.witness).feasible());
      double witness_value = 0.0;
      for (BidderId w : r.witness.winners()) witness_value += bids[w];
      CHECK(witness_value == doctest::Approx(r.best_value));
    }
  }
}

TEST_CASE("cardinality oracle matches an independent enumeration") {
  for (EnvironmentKind env : kAllEnvironments) {
    const std::size_t n = env == EnvironmentKind::kSecondaryNetwork ? 4 : 7;
    for (int trial = 0; trial < 12; ++trial) {
      GeneratorSpec spec = spec_for(env, n, 1 + trial % 3);
      if (env == EnvironmentKind::kSecondaryNetwork) spec.grid_side = 2;
      if (env == EnvironmentKind::kSinrPowerControl) spec.area = 10.0;
      const Instance inst = generate_instance(spec, mix_seed(400, trial));
      INFO(to_string(env), " trial ", trial);
      const OracleResult r = brute_force_max_cardinality(inst, everyone(inst));
      CHECK(r.best_value == reference_best_value(inst, std::vector<double>(n, 1.0)));
      CHECK(check_feasible(inst, r.witness).feasible());
      CHECK(r.witness.size() == static_cast<std::size_t>(r.best_value));
    }
  }
}

TEST_CASE("more channels never hurt") {
  for (EnvironmentKind env : kAllEnvironments) {
    for (int trial = 0; trial < 10; ++trial) {
      const Instance one = generate_instance(spec_for(env, 10, 1), mix_seed(500, trial));
      const Instance two = one.with_channels(2);
      const Instance three = one.with_channels(3);
      const double v1 = brute_force_max_cardinality(one, everyone(one)).best_value;
      const double v2 = brute_force_max_cardinality(two, everyone(two)).best_value;
      const double v3 = brute_force_max_cardinality(three, everyone(three)).best_value;
      CHECK(v1 <= v2);
      CHECK(v2 <= v3);
    }
  }
}

TEST_CASE("oracle dominates every packer") {
  for (EnvironmentKind env : kAllEnvironments) {
    for (int trial = 0; trial < 15; ++trial) {
      const Instance inst = generate_instance(spec_for(env, 9, 1 + trial % 3), mix_seed(600, trial));
      const double best = brute_force_max_cardinality(inst, everyone(inst)).best_value;
      for (const std::string spec : {default_packer_for(inst), "extend:" + default_packer_for(inst),
                                     std::string("extend:oracle")}) {
        CHECK(static_cast<double>(make_packer(spec, inst)->pack(everyone(inst)).size()) <= best);
      }
    }
  }
}

TEST_CASE("unit-bid welfare equals cardinality") {
  for (EnvironmentKind env : kAllEnvironments) {
    for (int trial = 0; trial < 10; ++trial) {
      const Instance inst = generate_instance(spec_for(env, 9, 1 + trial % 3), mix_seed(700, trial));
      CHECK(brute_force_max_welfare(inst, std::vector<double>(9, 1.0)).best_value ==
            brute_force_max_cardinality(inst, everyone(inst)).best_value);
    }
  }
}

TEST_CASE("oracle refuses oversized instances") {
  const Instance big = conflict_instance(15, {});
  CHECK_THROWS_AS(brute_force_max_cardinality(big, everyone(big)), RefusalError);
  CHECK_THROWS_AS(brute_force_max_welfare(big, std::vector<double>(15, 1.0)), RefusalError);
  const Instance wide = conflict_instance(3, {}, 4);
  CHECK_THROWS_AS(OraclePacker{wide}, RefusalError);
  const Instance fine = conflict_instance(3, {});
  CHECK_THROWS_AS(brute_force_max_welfare(fine, std::vector<double>{1.0, -1.0, 2.0}), InputError);
  CHECK_THROWS_AS(brute_force_max_welfare(fine, std::vector<double>{1.0}), InputError);
}

TEST_CASE("feasibility table realizes every feasible mask") {
  for (EnvironmentKind env : kAllEnvironments) {
    const Instance inst = generate_instance(spec_for(env, 6, 2), 808);
    const FeasibleSetTable table(inst);
    for (std::uint32_t mask = 0; mask < 64; ++mask) {
      if (!table.feasible(mask)) continue;
      const Allocation a = table.realize(mask);
      CHECK(check_feasible(inst, a).feasible());
      std::uint32_t served = 0;
      for (BidderId w : a.winners()) served |= 1U << w;
      CHECK(served == mask);
    }
  }
}
