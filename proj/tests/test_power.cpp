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
#include "spectrum/packing.hpp"
#include "spectrum/power.hpp"
#include "support.hpp"

using namespace spectrum;
using namespace spectrum::testing;

TEST_CASE("one link needs exactly beta N d^alpha") {
  const Instance inst = pc_instance({make_link(0, 0, 0, 1, 0)});
  const PowerSolveResult r = solve_power_assignment(inst, std::vector<BidderId>{0});
  REQUIRE(r.feasible());
  CHECK(r.powers.at(0) == doctest::Approx(1.0));
  CHECK(r.residuals.at(0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("co-located identical links are infeasible") {
  // Each sender is at distance 1 from the other receiver.
  const Instance inst = pc_instance({make_link(0, 0, 0, 1, 0), make_link(1, 1, 1, 0, 1)});
  REQUIRE(distance(inst.link(0).sender, inst.link(1).receiver) == doctest::Approx(1.0));
  REQUIRE(distance(inst.link(1).sender, inst.link(0).receiver) == doctest::Approx(1.0));
  const PowerSolveResult r = solve_power_assignment(inst, std::vector<BidderId>{0, 1});
  CHECK_FALSE(r.feasible());
  CHECK(r.powers.empty());
}

TEST_CASE("well-separated links are feasible and pass a textbook SINR check") {
  const Instance inst = pc_instance(
      {make_link(0, 0, 0, 1, 0), make_link(1, 40, 0, 40, 2), make_link(2, 0, 50, 1.5, 50)});
  const auto all = everyone(inst);
  const PowerSolveResult r = solve_power_assignment(inst, all);
  REQUIRE(r.feasible());
  for (BidderId i : all) {
    CHECK(r.powers.at(i) > 0.0);
    CHECK(reference_sinr(inst, i, all, r.powers) >= 1.0 - 1e-9);
  }
}

TEST_CASE("solver agrees with an independent elimination on random sets") {
  int feasible = 0;
  int infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    GeneratorSpec spec = spec_for(EnvironmentKind::kSinrPowerControl, 5, 1);
    spec.area = 12.0;
    const Instance inst = generate_instance(spec, mix_seed(17, trial));
    const auto all = everyone(inst);
    const PowerSolveResult r = solve_power_assignment(inst, all);
    CHECK(r.feasible() == reference_group_feasible(inst, all));
    (r.feasible() ? feasible : infeasible)++;
    if (r.feasible()) {
      for (BidderId i : all) CHECK(reference_sinr(inst, i, all, r.powers) >= 1.0 - 1e-9);
    }
  }
  CHECK(feasible > 0);
  CHECK(infeasible > 0);
}

TEST_CASE("feasibility without noise is scale invariant") {
  for (int trial = 0; trial < 100; ++trial) {
    GeneratorSpec spec = spec_for(EnvironmentKind::kSinrPowerControl, 4, 1);
    spec.area = 10.0;
    spec.params.noise = 0.0;
    const Instance inst = generate_instance(spec, mix_seed(23, trial));
    for (double factor : {0.01, 3.0, 1000.0}) {
      std::vector<Link> scaled;
      for (const Link& l : inst.links()) {
        scaled.push_back({l.id, {l.sender.x * factor, l.sender.y * factor},
                          {l.receiver.x * factor, l.receiver.y * factor}});
      }
      const Instance big = pc_instance(scaled, 1, inst.params());
      CHECK(solve_power_assignment(inst, everyone(inst)).feasible() ==
            solve_power_assignment(big, everyone(big)).feasible());
    }
  }
}

TEST_CASE("removing a link keeps a feasible system feasible") {
  for (int trial = 0; trial < 100; ++trial) {
    GeneratorSpec spec = spec_for(EnvironmentKind::kSinrPowerControl, 5, 1);
    spec.area = 25.0;
    const Instance inst = generate_instance(spec, mix_seed(29, trial));
    const auto all = everyone(inst);
    if (!solve_power_assignment(inst, all).feasible()) continue;
    for (BidderId drop : all) {
      std::vector<BidderId> rest;
      for (BidderId i : all) {
        if (i != drop) rest.push_back(i);
      }
      CHECK(solve_power_assignment(inst, rest).feasible());
    }
  }
}

TEST_CASE("solver input errors") {
  const Instance pc = pc_instance({make_link(0, 0, 0, 1, 0)});
  CHECK_THROWS_AS(solve_power_assignment(pc, std::vector<BidderId>{}), InputError);
  const Instance graph = conflict_instance(2, {});
  CHECK_THROWS_AS(solve_power_assignment(graph, std::vector<BidderId>{0}), InputError);
}

TEST_CASE("length-ordered packing always admits a power solve") {
  for (int trial = 0; trial < 200; ++trial) {
    GeneratorSpec spec = spec_for(EnvironmentKind::kSinrPowerControl, 12, 1 + trial % 3);
    const Instance inst = generate_instance(spec, mix_seed(41, trial));
    const Allocation a = unweighted_packing_pc(inst, everyone(inst));
    for (const auto& channel : a.channels) {
      if (channel.empty()) continue;
      CHECK(solve_power_assignment(inst, channel).feasible());
    }
  }
}
