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

#ifndef WORDORDER_REPORT_H_
#define WORDORDER_REPORT_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wordorder {

struct Aggregation {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
  std::size_t n_seeds = 0;

  bool operator==(const Aggregation&) const = default;
};

// One metric value, as a percentage in [0, 100], over `count` records.
struct MetricRow {
  std::string dataset;
  std::string variant;
  std::string component;  // empty for the unperturbed variant
  int n = 0;              // 0 for the unperturbed variant
  std::string metric;     // accuracy | exact_match | pct_invalid
  double value = 0.0;
  std::size_t count = 0;
  std::optional<Aggregation> aggregation;

  bool operator==(const MetricRow&) const = default;
};

struct MetricsReport {
  std::vector<MetricRow> rows;

  bool HasAggregation() const;
  // Row for (variant, metric), or nullptr.
  const MetricRow* Find(std::string_view variant, std::string_view metric) const;
};

// Per (dataset, variant, metric) mean and population standard deviation
// across reports. Every report must have exactly the same keys, else
// kKeyMismatch. Values are summed in sorted order, so the result does not
// depend on the order of `reports`.
MetricsReport Aggregate(std::span<const MetricsReport> reports);

enum class ReportFormat { kCsv, kMarkdown, kSvgBars };

ReportFormat ParseReportFormat(std::string_view name);

// Throws kEmptyReport for a report without rows.
std::string RenderReport(const MetricsReport& report, ReportFormat format);

// Reads the CSV that RenderReport(kCsv) writes.
MetricsReport ParseReportCsv(std::string_view text);

// Fixed-point with half-up rounding, e.g. FormatFixed(75.005, 2) == "75.01".
std::string FormatFixed(double value, int decimals);

inline constexpr const char* kReportCsvHeader =
    "dataset,variant,component,n,metric,value,count,mean,std,n_seeds";

}  // namespace wordorder

#endif  // WORDORDER_REPORT_H_
