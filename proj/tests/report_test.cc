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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "wordorder/error.h"
#include "wordorder/seed.h"

namespace wordorder {
namespace {

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

MetricRow Row(std::string variant, std::string metric, double value) {
  MetricRow row;
  row.dataset = "mnli";
  row.variant = std::move(variant);
  row.metric = std::move(metric);
  row.value = value;
  row.count = 10;
  return row;
}

MetricsReport OneRow(double value) {
  MetricsReport r;
  r.rows.push_back(Row("dev", "accuracy", value));
  return r;
}

std::size_t Count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

TEST(FormatFixedTest, HalfUp) {
  EXPECT_EQ(FormatFixed(94.525, 2), "94.53");
  EXPECT_EQ(FormatFixed(0.125, 2), "0.13");
  EXPECT_EQ(FormatFixed(100.0, 2), "100.00");
  EXPECT_EQ(FormatFixed(2.0 / 3.0 * 100, 2), "66.67");
  EXPECT_EQ(FormatFixed(0.81649658, 4), "0.8165");
  EXPECT_EQ(FormatFixed(-1.5, 0), "-2");
  EXPECT_EQ(FormatFixed(-0.001, 2), "0.00");
}

TEST(AggregateTest, ThreeSeeds) {
  const std::vector<MetricsReport> reports = {OneRow(94), OneRow(95), OneRow(96)};
  const MetricsReport out = Aggregate(reports);
  ASSERT_EQ(out.rows.size(), 1u);
  const Aggregation& a = *out.rows[0].aggregation;
  EXPECT_EQ(FormatFixed(a.mean, 2), "95.00");
  EXPECT_EQ(FormatFixed(a.std, 4), "0.8165");
  EXPECT_NEAR(a.std, std::sqrt(2.0 / 3.0), 1e-12);
  EXPECT_EQ(a.n_seeds, 3u);
}

TEST(AggregateTest, SingletonIsIdentity) {
  const std::vector<MetricsReport> reports = {OneRow(87.5)};
  const MetricsReport out = Aggregate(reports);
  EXPECT_EQ(out.rows[0].value, 87.5);
  EXPECT_EQ(out.rows[0].aggregation->mean, 87.5);
  EXPECT_EQ(out.rows[0].aggregation->std, 0.0);
}

TEST(AggregateTest, KeyMismatch) {
  MetricsReport other;
  other.rows.push_back(Row("part1-1gram", "accuracy", 50));
  const std::vector<MetricsReport> disjoint = {OneRow(1), other};
  EXPECT_EQ(CodeOf([&] { Aggregate(disjoint); }), ErrorCode::kKeyMismatch);
  MetricsReport extra = OneRow(2);
  extra.rows.push_back(Row("part1-1gram", "accuracy", 50));
  const std::vector<MetricsReport> subset = {OneRow(1), extra};
  EXPECT_EQ(CodeOf([&] { Aggregate(subset); }), ErrorCode::kKeyMismatch);
  MetricsReport dup = OneRow(1);
  dup.rows.push_back(Row("dev", "accuracy", 3));
  const std::vector<MetricsReport> duplicated = {dup};
  EXPECT_EQ(CodeOf([&] { Aggregate(duplicated); }), ErrorCode::kKeyMismatch);
  EXPECT_EQ(CodeOf([] { Aggregate({}); }), ErrorCode::kEmptyReport);
}

TEST(AggregateTest, PermutationInvariant) {
  Rng rng(4);
  std::vector<MetricsReport> reports;
  for (int s = 0; s < 7; ++s) {
    MetricsReport r;
    r.rows.push_back(Row("dev", "accuracy", 100 * UniformUnit(rng)));
    r.rows.push_back(Row("dev", "pct_invalid", 100 * UniformUnit(rng)));
    reports.push_back(r);
  }
  const MetricsReport base = Aggregate(reports);
  for (int k = 0; k < 20; ++k) {
    Shuffle(std::span<MetricsReport>(reports), rng);
    const MetricsReport again = Aggregate(reports);
    for (std::size_t i = 0; i < base.rows.size(); ++i) {
      EXPECT_EQ(again.rows[i].aggregation, base.rows[i].aggregation);
    }
  }
}

TEST(RenderReportTest, OneRowCsv) {
  const std::string csv = RenderReport(OneRow(95), ReportFormat::kCsv);
  EXPECT_EQ(csv,
            "dataset,variant,component,n,metric,value,count,mean,std,n_seeds\n"
            "mnli,dev,,,accuracy,95.00,10,,,\n");
}

TEST(RenderReportTest, CsvRoundTrip) {
  MetricsReport r;
  MetricRow a = Row("part1-3gram", "pct_invalid", 94.52);
  a.component = "part1";
  a.n = 3;
  a.aggregation = Aggregation{94.52, 1.25, 3};
  r.rows.push_back(a);
  r.rows.push_back(Row("dev", "accuracy", 84.25));
  r.rows[1].dataset = "name, with \"quotes\"";
  const MetricsReport back = ParseReportCsv(RenderReport(r, ReportFormat::kCsv));
  EXPECT_EQ(back.rows, r.rows);
  EXPECT_EQ(CodeOf([] { ParseReportCsv("a,b\n"); }), ErrorCode::kSchemaError);
}

TEST(RenderReportTest, MarkdownColumns) {
  const std::string plain = RenderReport(OneRow(95), ReportFormat::kMarkdown);
  const std::string header = plain.substr(0, plain.find('\n'));
  EXPECT_EQ(Count(header, "|") - 1, 5u);

  const std::vector<MetricsReport> seeds = {OneRow(94), OneRow(96)};
  const std::string aggregated = RenderReport(Aggregate(seeds), ReportFormat::kMarkdown);
  const std::string agg_header = aggregated.substr(0, aggregated.find('\n'));
  EXPECT_EQ(Count(agg_header, "|") - 1, 8u);
  EXPECT_NE(aggregated.find("| 95.00 | 1.0000 | 2 |"), std::string::npos);
}

TEST(RenderReportTest, SvgErrorBars) {
  const std::vector<MetricsReport> seeds = {OneRow(94), OneRow(96)};
  const std::string svg = RenderReport(Aggregate(seeds), ReportFormat::kSvgBars);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_EQ(Count(svg, "class=\"error-bar\""), 1u);
  EXPECT_EQ(Count(svg, "class=\"bar\""), 1u);
  const std::string plain = RenderReport(OneRow(50), ReportFormat::kSvgBars);
  EXPECT_EQ(Count(plain, "error-bar"), 0u);
}

TEST(RenderReportTest, SvgOneChartPerDataset) {
  MetricsReport r = OneRow(10);
  r.rows.push_back(Row("dev", "pct_invalid", 20));
  MetricRow other = Row("dev", "accuracy", 30);
  other.dataset = "cola";
  r.rows.push_back(other);
  const std::string svg = RenderReport(r, ReportFormat::kSvgBars);
  EXPECT_EQ(Count(svg, "<g class=\"chart\""), 2u);
  EXPECT_EQ(Count(svg, "class=\"bar\""), 3u);
}

TEST(RenderReportTest, EmptyReport) {
  EXPECT_EQ(CodeOf([] { RenderReport({}, ReportFormat::kCsv); }), ErrorCode::kEmptyReport);
  EXPECT_EQ(CodeOf([] { ParseReportFormat("pdf"); }), ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace wordorder
