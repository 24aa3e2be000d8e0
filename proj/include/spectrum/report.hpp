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

#include <string>
#include <utility>
#include <vector>

#include "spectrum/harness.hpp"

namespace spectrum {

/// Fixed-format number rendering (%.10g) used by every report.
std::string format_number(double value);

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
  std::string colour = "#1f77b4";
  bool dashed = false;
  bool markers = false;
};

/// Standalone SVG line chart.
std::string render_svg_plot(const std::string& title, const std::string& x_label,
                            const std::string& y_label, const std::vector<PlotSeries>& series);

std::string audit_csv(const AuditReport& report);
std::string audit_summary(const AuditReport& report);

std::string welfare_csv(const WelfareStats& stats);
std::string welfare_summary(const WelfareStats& stats);
/// Running mean welfare against trial count, with the floor when known.
std::string welfare_svg(const WelfareStats& stats);

std::string psi_csv(const PsiTable& table);
std::string psi_summary(const PsiTable& table);
std::string psi_svg(const PsiTable& table);

}  // namespace spectrum
