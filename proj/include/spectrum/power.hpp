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

#include <span>
#include <vector>

#include "spectrum/model.hpp"

namespace spectrum {

enum class PowerStatus { kFeasible, kInfeasible };

struct PowerSolveResult {
  PowerStatus status = PowerStatus::kInfeasible;
  PowerMap powers;                // empty unless feasible
  std::vector<double> residuals;  // achieved SINR minus beta, ascending link id

  bool feasible() const { return status == PowerStatus::kFeasible; }
};

/// Systems whose reciprocal condition estimate falls below this are treated
/// as singular.
inline constexpr double kMinReciprocalCondition = 1e-12;

/// Minimal power assignment that meets every SINR constraint of `co_channel`
/// with equality, or infeasible when no positive assignment exists.
///
/// With x_i = sigma_i / d_ii^alpha the constraints become the linear system
/// (I - beta G) x = beta N 1 with G_ij = d_jj^alpha / d_ji^alpha (i != j).
/// A positive solution exists iff the spectral radius of beta G is below one,
/// and it is then the component-wise minimal feasible point. With zero noise
/// the right-hand side is taken as beta 1 instead, which yields strictly
/// positive powers with the same feasibility status.
PowerSolveResult solve_power_assignment(const Instance& instance,
                                        std::span<const BidderId> co_channel);

}  // namespace spectrum
