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

#include "spectrum/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace spectrum {

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

namespace {

std::string escape_xml(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string optional_number(const std::optional<double>& v) {
  return v ? format_number(*v) : "n/a";
}

}  // namespace

std::string render_svg_plot(const std::string& title, const std::string& x_label,
                            const std::string& y_label, const std::vector<PlotSeries>& series) {
  constexpr double kWidth = 640, kHeight = 400, kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  bool first = true;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (first) {
        x_min = x_max = x;
        y_min = y_max = y;
        first = false;
      }
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  y_min = std::min(y_min, 0.0);
  if (x_max <= x_min) x_max = x_min + 1;
  if (y_max <= y_min) y_max = y_min + 1;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) { return kTop + plot_h - (y - y_min) / (y_max - y_min) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape_xml(title) << "</text>\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double fx = x_min + (x_max - x_min) * tick / 4.0;
    const double fy = y_min + (y_max - y_min) * tick / 4.0;
    svg << "<text x=\"" << format_number(px(fx)) << "\" y=\"" << kHeight - kBottom + 16
        << "\" text-anchor=\"middle\">" << format_number(fx) << "</text>\n";
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << format_number(py(fy) + 4)
        << "\" text-anchor=\"end\">" << format_number(fy) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\">" << escape_xml(x_label) << "</text>\n";
  svg << "<text x=\"16\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << kTop + plot_h / 2 << ")\">" << escape_xml(y_label) << "</text>\n";

  double legend_y = kTop + 14;
  for (const auto& s : series) {
    svg << "<polyline fill=\"none\" stroke=\"" << s.colour << "\" stroke-width=\"1.5\"";
    if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
    svg << " points=\"";
    for (auto [x, y] : s.points) {
      if (std::isfinite(x) && std::isfinite(y)) {
        svg << format_number(px(x)) << ',' << format_number(py(y)) << ' ';
      }
    }
    svg << "\"/>\n";
    if (s.markers) {
      for (auto [x, y] : s.points) {
        if (std::isfinite(x) && std::isfinite(y)) {
          svg << "<circle cx=\"" << format_number(px(x)) << "\" cy=\"" << format_number(py(y))
              << "\" r=\"2.5\" fill=\"" << s.colour << "\"/>\n";
        }
      }
    }
    svg << "<text x=\"" << kLeft + plot_w - 8 << "\" y=\"" << legend_y
        << "\" text-anchor=\"end\" fill=\"" << s.colour << "\">" << escape_xml(s.label)
        << "</text>\n";
    legend_y += 16;
  }
  svg << "</svg>\n";
  return svg.str();
}

// --- Audit ---------------------------------------------------------------------------

std::string audit_csv(const AuditReport& report) {
  std::ostringstream out;
  out << "tape_seed,bidder,deviation,truthful_utility,deviant_utility,gain\n";
  for (const AuditEntry& e : report.entries) {
    out << e.tape_seed << ',' << e.bidder << ',' << format_number(e.deviation) << ','
        << format_number(e.truthful_utility) << ',' << format_number(e.deviant_utility) << ','
        << format_number(e.gain()) << '\n';
  }
  return out.str();
}

std::string audit_summary(const AuditReport& report) {
  std::ostringstream out;
  out << "truthfulness audit\n"
      << "  comparisons:           " << report.checks << '\n'
      << "  violations:            " << report.violations << '\n'
      << "  max violation:         " << format_number(report.max_violation) << '\n'
      << "  rationality failures:  " << report.rationality_failures << '\n'
      << "  result:                " << (report.passed() ? "PASS" : "FAIL") << '\n';
  for (const AuditEntry& e : report.violating) {
    out << "  violation: tape_seed=" << e.tape_seed << " bidder=" << e.bidder
        << " bid=" << format_number(e.deviation) << " gain=" << format_number(e.gain()) << '\n';
  }
  return out.str();
}

// --- Welfare ------------------------------------------------------------------------

std::string welfare_csv(const WelfareStats& stats) {
  std::ostringstream out;
  out << "trial,welfare,revenue\n";
  for (std::size_t t = 0; t < stats.welfare_per_trial.size(); ++t) {
    out << t << ',' << format_number(stats.welfare_per_trial[t]) << ','
        << format_number(stats.revenue_per_trial[t]) << '\n';
  }
  return out.str();
}

std::string welfare_summary(const WelfareStats& stats) {
  std::ostringstream out;
  out << "welfare experiment\n"
      << "  packer:                " << stats.packer << '\n'
      << "  bidders:               " << stats.bidders << '\n'
      << "  epsilon:               " << format_number(stats.epsilon) << '\n'
      << "  trials:                " << stats.welfare.count << '\n'
      << "  mean welfare:          " << format_number(stats.welfare.mean) << " (se "
      << format_number(stats.welfare.std_error) << ")\n"
      << "  mean revenue:          " << format_number(stats.revenue.mean) << " (se "
      << format_number(stats.revenue.std_error) << ")\n"
      << "  revenue > welfare:     " << stats.revenue_exceeds_welfare << " trials\n"
      << "  advertised psi:        " << optional_number(stats.psi) << '\n'
      << "  optimum welfare:       " << optional_number(stats.optimum) << '\n'
      << "  welfare / optimum:     " << optional_number(stats.ratio()) << '\n'
      << "  floor factor:          " << optional_number(stats.floor_factor) << '\n'
      << "  welfare floor:         " << optional_number(stats.welfare_floor()) << '\n'
      << "  result:                "
      << (stats.welfare_floor() ? (stats.floor_met() ? "PASS" : "FAIL") : "n/a") << '\n';
  return out.str();
}

std::string welfare_svg(const WelfareStats& stats) {
  PlotSeries running{"running mean welfare", {}, "#1f77b4"};
  double total = 0.0;
  for (std::size_t t = 0; t < stats.welfare_per_trial.size(); ++t) {
    total += stats.welfare_per_trial[t];
    running.points.emplace_back(static_cast<double>(t + 1), total / static_cast<double>(t + 1));
  }
  std::vector<PlotSeries> series{running};
  const double last = static_cast<double>(std::max<std::size_t>(stats.welfare_per_trial.size(), 1));
  if (const auto floor = stats.welfare_floor()) {
    series.push_back({"welfare floor", {{1.0, *floor}, {last, *floor}}, "#d62728", true});
  }
  if (stats.optimum) {
    series.push_back({"optimum", {{1.0, *stats.optimum}, {last, *stats.optimum}}, "#2ca02c", true});
  }
  return render_svg_plot("Mean welfare (" + stats.packer + ")", "trials", "welfare", series);
}

// --- Psi -----------------------------------------------------------------------------

std::string psi_csv(const PsiTable& table) {
  std::ostringstream out;
  out << "seed,packed,optimum,ratio\n";
  for (const PsiRow& r : table.rows) {
    out << r.seed << ',' << r.packed << ',' << r.optimum << ',' << format_number(r.ratio) << '\n';
  }
  return out.str();
}

std::string psi_summary(const PsiTable& table) {
  std::ostringstream out;
  out << "packer quality\n"
      << "  packer:                " << table.packer << '\n'
      << "  instances:             " << table.rows.size() << '\n'
      << "  min ratio:             " << format_number(table.min_ratio) << '\n'
      << "  mean ratio:            " << format_number(table.mean_ratio) << '\n'
      << "  advertised psi:        " << optional_number(table.advertised) << '\n'
      << "  below advertised:      " << table.below_advertised << '\n'
      << "  result:                "
      << (table.advertised ? (table.below_advertised == 0 ? "PASS" : "FAIL") : "n/a") << '\n';
  return out.str();
}

std::string psi_svg(const PsiTable& table) {
  PlotSeries ratios{"packed / optimum", {}, "#1f77b4", false, true};
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    ratios.points.emplace_back(static_cast<double>(i), table.rows[i].ratio);
  }
  std::vector<PlotSeries> series{ratios};
  if (table.advertised) {
    const double last = static_cast<double>(std::max<std::size_t>(table.rows.size(), 1) - 1);
    series.push_back({"advertised psi", {{0.0, *table.advertised}, {last, *table.advertised}},
                      "#d62728", true});
  }
  return render_svg_plot("Packing ratio (" + table.packer + ")", "instance", "ratio", series);
}

}  // namespace spectrum
