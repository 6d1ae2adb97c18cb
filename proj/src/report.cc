// Copyright 2026 The wordorder Authors.
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

#include "wordorder/report.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "csv.h"
#include "wordorder/error.h"

namespace wordorder {
namespace {

using RowKey = std::tuple<std::string, std::string, std::string>;

RowKey KeyOf(const MetricRow& row) { return {row.dataset, row.variant, row.metric}; }

std::string KeyText(const RowKey& key) {
  return std::get<0>(key) + "/" + std::get<1>(key) + "/" + std::get<2>(key);
}

std::string XmlEscape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string RenderCsv(const MetricsReport& report) {
  std::string out = std::string(kReportCsvHeader) + "\n";
  for (const MetricRow& row : report.rows) {
    std::vector<std::string> fields = {
        row.dataset, row.variant, row.component, row.n > 0 ? std::to_string(row.n) : "",
        row.metric, FormatFixed(row.value, 2), std::to_string(row.count)};
    if (row.aggregation) {
      fields.push_back(FormatFixed(row.aggregation->mean, 2));
      fields.push_back(FormatFixed(row.aggregation->std, 4));
      fields.push_back(std::to_string(row.aggregation->n_seeds));
    } else {
      fields.insert(fields.end(), {"", "", ""});
    }
    out += csv::JoinRow(fields);
    out.push_back('\n');
  }
  return out;
}

std::string RenderMarkdown(const MetricsReport& report) {
  const bool aggregated = report.HasAggregation();
  std::string out = "| dataset | variant | metric | value | count |";
  std::string rule = "|---|---|---|---:|---:|";
  if (aggregated) {
    out += " mean | std | n_seeds |";
    rule += "---:|---:|---:|";
  }
  out += "\n" + rule + "\n";
  for (const MetricRow& row : report.rows) {
    out += "| " + row.dataset + " | " + row.variant + " | " + row.metric + " | " +
           FormatFixed(row.value, 2) + " | " + std::to_string(row.count) + " |";
    if (aggregated) {
      if (row.aggregation) {
        out += " " + FormatFixed(row.aggregation->mean, 2) + " | " +
               FormatFixed(row.aggregation->std, 4) + " | " +
               std::to_string(row.aggregation->n_seeds) + " |";
      } else {
        out += "  |  |  |";
      }
    }
    out.push_back('\n');
  }
  return out;
}

// One grouped bar chart per dataset: variants along x, one bar per metric.
std::string RenderSvg(const MetricsReport& report) {
  std::vector<std::string> datasets;
  std::vector<std::string> metrics;
  for (const MetricRow& row : report.rows) {
    if (std::find(datasets.begin(), datasets.end(), row.dataset) == datasets.end()) {
      datasets.push_back(row.dataset);
    }
    if (std::find(metrics.begin(), metrics.end(), row.metric) == metrics.end()) {
      metrics.push_back(row.metric);
    }
  }
  static const char* kPalette[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3"};
  constexpr double kBarWidth = 18.0;
  constexpr double kGroupGap = 24.0;
  constexpr double kPlotHeight = 200.0;
  constexpr double kChartHeight = 300.0;
  constexpr double kLeft = 50.0;

  std::size_t max_variants = 1;
  std::map<std::string, std::vector<std::string>> variants_of;
  for (const MetricRow& row : report.rows) {
    auto& variants = variants_of[row.dataset];
    if (std::find(variants.begin(), variants.end(), row.variant) == variants.end()) {
      variants.push_back(row.variant);
    }
    max_variants = std::max(max_variants, variants.size());
  }
  const double group_width = kBarWidth * static_cast<double>(metrics.size()) + kGroupGap;
  const double width = kLeft + group_width * static_cast<double>(max_variants) + 20.0;
  const double height = kChartHeight * static_cast<double>(datasets.size());

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << FormatFixed(width, 1)
      << "\" height=\"" << FormatFixed(height, 1) << "\">\n";
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    const double top = kChartHeight * static_cast<double>(d) + 30.0;
    const double base = top + kPlotHeight;
    svg << "<g class=\"chart\" data-dataset=\"" << XmlEscape(datasets[d]) << "\">\n";
    svg << "<text x=\"" << kLeft << "\" y=\"" << FormatFixed(top - 10.0, 1) << "\">"
        << XmlEscape(datasets[d]) << "</text>\n";
    svg << "<line class=\"axis\" x1=\"" << kLeft << "\" y1=\"" << FormatFixed(base, 1)
        << "\" x2=\"" << FormatFixed(width - 10.0, 1) << "\" y2=\"" << FormatFixed(base, 1)
        << "\" stroke=\"black\"/>\n";
    const auto& variants = variants_of[datasets[d]];
    for (std::size_t v = 0; v < variants.size(); ++v) {
      const double group_x = kLeft + group_width * static_cast<double>(v) + kGroupGap / 2;
      svg << "<text x=\"" << FormatFixed(group_x, 1) << "\" y=\"" << FormatFixed(base + 16.0, 1)
          << "\" font-size=\"10\">" << XmlEscape(variants[v]) << "</text>\n";
      for (std::size_t m = 0; m < metrics.size(); ++m) {
        const MetricRow* row = nullptr;
        for (const MetricRow& r : report.rows) {
          if (r.dataset == datasets[d] && r.variant == variants[v] && r.metric == metrics[m]) {
            row = &r;
            break;
          }
        }
        if (row == nullptr) continue;
        const double x = group_x + kBarWidth * static_cast<double>(m);
        const double h = kPlotHeight * std::clamp(row->value, 0.0, 100.0) / 100.0;
        svg << "<rect class=\"bar\" x=\"" << FormatFixed(x, 1) << "\" y=\""
            << FormatFixed(base - h, 1) << "\" width=\"" << FormatFixed(kBarWidth - 2, 1)
            << "\" height=\"" << FormatFixed(h, 1) << "\" fill=\"" << kPalette[m % 5]
            << "\"><title>" << XmlEscape(row->metric) << " " << FormatFixed(row->value, 2)
            << "</title></rect>\n";
        if (row->aggregation && row->aggregation->std > 0.0) {
          const double cx = x + (kBarWidth - 2) / 2;
          const double spread = kPlotHeight * row->aggregation->std / 100.0;
          svg << "<line class=\"error-bar\" x1=\"" << FormatFixed(cx, 1) << "\" y1=\""
              << FormatFixed(base - h - spread, 1) << "\" x2=\"" << FormatFixed(cx, 1)
              << "\" y2=\"" << FormatFixed(base - h + spread, 1) << "\" stroke=\"black\"/>\n";
        }
      }
    }
    svg << "</g>\n";
  }
  for (std::size_t m = 0; m < metrics.size(); ++m) {
    svg << "<text class=\"legend\" x=\"" << FormatFixed(width - 140.0, 1) << "\" y=\""
        << 14 + 12 * m << "\" font-size=\"10\" fill=\"" << kPalette[m % 5] << "\">"
        << XmlEscape(metrics[m]) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

double ParseDouble(const csv::Row& row, const std::string& text) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used == text.size()) return value;
  } catch (const std::exception&) {
  }
  throw ParseError(row.line, "'" + text + "' is not a number");
}

std::size_t ParseCount(const csv::Row& row, const std::string& text) {
  const double value = ParseDouble(row, text);
  if (value < 0 || value != std::floor(value)) throw ParseError(row.line, "bad count");
  return static_cast<std::size_t>(value);
}

}  // namespace

bool MetricsReport::HasAggregation() const {
  return std::any_of(rows.begin(), rows.end(),
                     [](const MetricRow& r) { return r.aggregation.has_value(); });
}

const MetricRow* MetricsReport::Find(std::string_view variant, std::string_view metric) const {
  for (const MetricRow& row : rows) {
    if (row.variant == variant && row.metric == metric) return &row;
  }
  return nullptr;
}

std::string FormatFixed(double value, int decimals) {
  double scale = 1.0;
  for (int i = 0; i < decimals; ++i) scale *= 10.0;
  const bool negative = value < 0;
  const double scaled = std::fabs(value) * scale;
  // The epsilon absorbs binary representation error at exact .5 ties.
  const auto units = static_cast<long long>(std::floor(scaled + 0.5 + 1e-7));
  const long long whole = units / static_cast<long long>(scale);
  const long long frac = units % static_cast<long long>(scale);
  std::string out = (negative && units != 0 ? "-" : "") + std::to_string(whole);
  if (decimals > 0) {
    std::string digits = std::to_string(frac);
    out += "." + std::string(static_cast<std::size_t>(decimals) - digits.size(), '0') + digits;
  }
  return out;
}

MetricsReport Aggregate(std::span<const MetricsReport> reports) {
  if (reports.empty()) throw Error(ErrorCode::kEmptyReport, "nothing to aggregate");
  std::map<RowKey, std::vector<double>> values;
  std::set<RowKey> first_keys;
  for (const MetricRow& row : reports[0].rows) {
    if (!first_keys.insert(KeyOf(row)).second) {
      throw Error(ErrorCode::kKeyMismatch, "duplicate row " + KeyText(KeyOf(row)));
    }
  }
  for (const MetricsReport& report : reports) {
    std::set<RowKey> keys;
    for (const MetricRow& row : report.rows) {
      const RowKey key = KeyOf(row);
      if (!keys.insert(key).second) {
        throw Error(ErrorCode::kKeyMismatch, "duplicate row " + KeyText(key));
      }
      if (!first_keys.count(key)) {
        throw Error(ErrorCode::kKeyMismatch, "row " + KeyText(key) + " missing from a report");
      }
      values[key].push_back(row.value);
    }
    if (keys.size() != first_keys.size()) {
      throw Error(ErrorCode::kKeyMismatch, "reports have different row sets");
    }
  }
  MetricsReport out;
  for (const MetricRow& row : reports[0].rows) {
    std::vector<double> v = values.at(KeyOf(row));
    std::sort(v.begin(), v.end());
    double sum = 0.0;
    for (double x : v) sum += x;
    const double mean = sum / static_cast<double>(v.size());
    double squares = 0.0;
    for (double x : v) squares += (x - mean) * (x - mean);
    MetricRow merged = row;
    merged.value = mean;
    merged.aggregation = Aggregation{mean, std::sqrt(squares / static_cast<double>(v.size())),
                                     v.size()};
    out.rows.push_back(std::move(merged));
  }
  return out;
}

ReportFormat ParseReportFormat(std::string_view name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "markdown") return ReportFormat::kMarkdown;
  if (name == "svg_bars") return ReportFormat::kSvgBars;
  throw Error(ErrorCode::kInvalidArgument, "unknown report format '" + std::string(name) + "'");
}

std::string RenderReport(const MetricsReport& report, ReportFormat format) {
  if (report.rows.empty()) throw Error(ErrorCode::kEmptyReport, "report has no rows");
  switch (format) {
    case ReportFormat::kCsv: return RenderCsv(report);
    case ReportFormat::kMarkdown: return RenderMarkdown(report);
    case ReportFormat::kSvgBars: return RenderSvg(report);
  }
  return {};
}

MetricsReport ParseReportCsv(std::string_view text) {
  const std::vector<csv::Row> rows = csv::Parse(text);
  if (rows.empty() || csv::JoinRow(rows[0].fields) != kReportCsvHeader) {
    throw Error(ErrorCode::kSchemaError, std::string("report header must be ") + kReportCsvHeader);
  }
  MetricsReport report;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const csv::Row& row = rows[i];
    if (row.fields.size() != 10) throw ParseError(row.line, "expected 10 fields");
    MetricRow m;
    m.dataset = row.fields[0];
    m.variant = row.fields[1];
    m.component = row.fields[2];
    m.n = row.fields[3].empty() ? 0 : static_cast<int>(ParseCount(row, row.fields[3]));
    m.metric = row.fields[4];
    m.value = ParseDouble(row, row.fields[5]);
    m.count = ParseCount(row, row.fields[6]);
    if (!row.fields[7].empty()) {
      m.aggregation = Aggregation{ParseDouble(row, row.fields[7]), ParseDouble(row, row.fields[8]),
                                  ParseCount(row, row.fields[9])};
    }
    report.rows.push_back(std::move(m));
  }
  return report;
}

}  // namespace wordorder
