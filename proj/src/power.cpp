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

#include "spectrum/power.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace spectrum {

PowerSolveResult solve_power_assignment(const Instance& instance,
                                        std::span<const BidderId> co_channel) {
  if (instance.kind() != EnvironmentKind::kSinrPowerControl) {
    throw InputError("power control requires a SINR power-control instance");
  }
  if (co_channel.empty()) throw InputError("power assignment needs a nonempty link set");
  const std::vector<BidderId> links = normalize_bidder_set(instance, co_channel);

  const PhysicalParams& params = instance.params();
  const auto m = static_cast<Eigen::Index>(links.size());
  std::vector<double> own_loss(links.size());
  for (std::size_t a = 0; a < links.size(); ++a) {
    own_loss[a] = std::pow(instance.link(links[a]).length(), params.alpha);
  }

  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    const Link& receiver = instance.link(links[a]);
    for (Eigen::Index b = 0; b < m; ++b) {
      if (a == b) continue;
      const Link& sender = instance.link(links[b]);
      const double cross = std::pow(distance(sender.sender, receiver.receiver), params.alpha);
      const double gain = own_loss[b] / cross;
      if (!std::isfinite(gain)) return {};
      system(a, b) = -params.beta * gain;
    }
  }

  const double noise = params.noise > 0.0 ? params.noise : 1.0;
  const Eigen::VectorXd rhs = Eigen::VectorXd::Constant(m, params.beta * noise);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  const double rcond = lu.rcond();
  if (!(rcond >= kMinReciprocalCondition)) return {};
  const Eigen::VectorXd x = lu.solve(rhs);

  PowerSolveResult result;
  for (Eigen::Index a = 0; a < m; ++a) {
    if (!(std::isfinite(x(a)) && x(a) > 0.0)) return {};
    const double sigma = x(a) * own_loss[a];
    if (!(std::isfinite(sigma) && sigma > 0.0)) return {};
    result.powers.emplace(links[a], sigma);
  }
  for (BidderId i : links) {
    const double residual = sinr_ratio(instance, i, links, result.powers) - params.beta;
    if (!(residual >= -kDefaultTolerance)) return {};
    result.residuals.push_back(residual);
  }
  result.status = PowerStatus::kFeasible;
  return result;
}

}  // namespace spectrum
