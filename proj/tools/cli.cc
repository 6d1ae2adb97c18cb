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

#include "cli.h"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wordorder/dataset_io.h"
#include "wordorder/error.h"
#include "wordorder/eval_harness.h"
#include "wordorder/fi_augmenter.h"
#include "wordorder/ngram_permuter.h"
#include "wordorder/record.h"
#include "wordorder/report.h"
#include "wordorder/toy_training.h"

namespace wordorder::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr double kGradCheckTolerance = 1e-4;

// key=value log lines on the diagnostic stream.
class Logger {
 public:
  Logger(std::ostream& err, std::string command) : err_(err), command_(std::move(command)) {}

  void Info(std::string_view event,
            std::initializer_list<std::pair<std::string_view, std::string>> fields = {}) {
    Write("info", event, fields);
  }

  void Error(std::string_view event,
             std::initializer_list<std::pair<std::string_view, std::string>> fields = {}) {
    Write("error", event, fields);
  }

 private:
  void Write(std::string_view level, std::string_view event,
             std::initializer_list<std::pair<std::string_view, std::string>> fields) {
    err_ << "level=" << level << " cmd=" << command_ << " event=" << event;
    for (const auto& [key, value] : fields) err_ << ' ' << key << '=' << Quote(value);
    err_ << '\n';
  }

  static std::string Quote(const std::string& value) {
    if (!value.empty() && value.find_first_of(" \"=\t\n") == std::string::npos) return value;
    return ordered_json(value).dump();
  }

  std::ostream& err_;
  std::string command_;
};

std::string Str(std::size_t v) { return std::to_string(v); }

std::string JoinNames(const std::vector<std::string>& names) {
  std::string out;
  for (const std::string& name : names) {
    if (!out.empty()) out += ',';
    out += name;
  }
  return out;
}

std::string ReadInput(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }
  return ReadFileToString(path);
}

void WriteOutput(const std::string& path, std::string_view content, std::ostream& out) {
  if (path == "-") {
    out << content;
    out.flush();
    return;
  }
  WriteStringToFile(path, content);
}

void EnsureDirectory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create directory " + dir.string());
}

std::vector<Record> LoadRecords(const std::string& path, const std::string& format,
                                const std::optional<std::string>& task, std::istream& in) {
  std::vector<Record> records = ParseDataset(ReadInput(path, in), ParseDatasetFormat(format));
  if (task) {
    const Task expected = ParseTask(*task);
    for (const Record& record : records) {
      if (record.task != expected) {
        throw Error(ErrorCode::kSchemaError, "record " + record.id + " has task " +
                                                 TaskName(record.task) + ", expected " +
                                                 TaskName(expected));
      }
    }
  }
  return records;
}

ordered_json StatsToJson(const DatasetStats& stats) {
  ordered_json j;
  j["original_count"] = stats.original_count;
  j["used_count"] = stats.used_count;
  ordered_json medians = ordered_json::object();
  for (const auto& [name, median] : stats.median_words) medians[name] = median;
  j["median_words"] = medians;
  return j;
}

std::vector<std::string> ComponentsOrDefault(const std::vector<std::string>& requested,
                                             std::span<const Record> records) {
  if (!requested.empty() || records.empty()) return requested;
  return DefaultTargetComponents(records.front().task);
}

std::set<std::string> DefaultInvalidLabels(std::span<const Record> records) {
  std::set<std::string> labels = {std::string(kInvalidLabel)};
  if (records.empty()) return labels;
  for (const std::string& name : SchemaComponents(records.front().task)) {
    labels.insert(InvalidLabelFor(InvalidLabelMode::kPerComponent, name));
  }
  labels.insert(InvalidLabelFor(InvalidLabelMode::kPerComponent, kEndingsGroup));
  return labels;
}

EvalVariant DetectVariant(std::span<const Record> records) {
  if (records.empty() || !records.front().provenance) return EvalVariant::Dev();
  const Provenance& p = *records.front().provenance;
  if (!p.perturbed_component || !p.n) return EvalVariant::Dev();
  return EvalVariant::Permuted(*p.perturbed_component, *p.n);
}

// Options shared by several subcommands.
struct Options {
  std::string input = "-";
  std::vector<std::string> inputs;
  std::string output = "-";
  std::string format = "jsonl";
  std::optional<std::string> task;
  std::vector<int> n_set = {1, 2, 3};
  int n = 1;
  std::string mode = "differs";
  std::vector<std::string> components;
  std::string ratio = "1";
  std::string invalid_label_mode = "single";
  int min_words = 3;
  std::string split_fraction = "0.9";
  bool split_before_augment = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> text;
  std::optional<std::string> variant;
  std::optional<std::string> metric;
  std::string report_format = "csv";
  std::vector<std::string> predictions;
  std::vector<std::string> model_names;
  std::string dataset = "dataset";
  std::vector<std::string> invalid_labels;
  std::string dev;
  std::string model;
  std::optional<std::string> word_vectors;
  std::optional<std::string> train_report;
  std::size_t embed_dim = 64;
  std::size_t max_len = 64;
  double learning_rate = 1e-3;
  std::size_t batch_size = 32;
  std::size_t epochs = 20;
  std::size_t patience = 3;
};

int RunPermute(const Options& o, std::ostream& out, std::istream& in, Logger& log) {
  PerturbationSpec spec;
  spec.n = o.n;
  spec.mode = ParsePermutationMode(o.mode);
  spec.seed = *o.seed;
  std::vector<std::string> lines;
  if (o.text) {
    lines.push_back(*o.text);
  } else {
    std::istringstream stream(ReadInput(o.input, in));
    for (std::string line; std::getline(stream, line);) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
  }
  std::string result;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      result += Permute(lines[i], spec);
      result += '\n';
    } catch (const Error& e) {
      throw Error(e.code(), "line " + Str(i + 1) + ": " + e.what());
    }
  }
  WriteOutput(o.output, result, out);
  log.Info("done", {{"lines", Str(lines.size())}});
  return kExitOk;
}

int RunAugment(const Options& o, std::istream& in, Logger& log) {
  if (o.output == "-") throw Error(ErrorCode::kInvalidArgument, "--output must name a directory");
  const std::vector<Record> records = LoadRecords(o.input, o.format, o.task, in);
  AugmentConfig config;
  config.ratio = Ratio::Parse(o.ratio);
  config.n_set = o.n_set;
  config.invalid_label_mode = ParseInvalidLabelMode(o.invalid_label_mode);
  config.target_components = ComponentsOrDefault(o.components, records);
  config.min_words = o.min_words;
  config.split_fraction = Ratio::Parse(o.split_fraction);
  config.master_seed = *o.seed;
  config.mode = ParsePermutationMode(o.mode);
  config.split_before_augment = o.split_before_augment;

  const FilterResult filtered = FilterMinWords(records, o.min_words, config.target_components);
  log.Info("filtered", {{"original", Str(filtered.stats.original_count)},
                        {"used", Str(filtered.stats.used_count)}});
  const AugmentResult result = Augment(filtered.records, config);

  const fs::path dir(o.output);
  EnsureDirectory(dir);
  WriteDataset(result.train, dir / "train.jsonl", DatasetFormat::kJsonl);
  WriteDataset(result.dev, dir / "dev.jsonl", DatasetFormat::kJsonl);
  ordered_json manifest = result.manifest.ToJson();
  manifest["filter"] = StatsToJson(filtered.stats);
  WriteStringToFile(dir / "manifest.json", manifest.dump(2) + "\n");
  for (const auto& [id, reason] : result.manifest.skipped) {
    log.Info("skipped", {{"id", id}, {"reason", reason}});
  }
  log.Info("done", {{"valid", Str(result.manifest.valid_count)},
                    {"invalid", Str(result.manifest.invalid_count)},
                    {"train", Str(result.train.size())},
                    {"dev", Str(result.dev.size())}});
  return kExitOk;
}

int RunMakeEval(const Options& o, std::istream& in, Logger& log) {
  if (o.output == "-") throw Error(ErrorCode::kInvalidArgument, "--output must name a directory");
  const std::vector<Record> records = LoadRecords(o.input, o.format, o.task, in);
  const std::vector<std::string> components = ComponentsOrDefault(o.components, records);
  const FilterResult filtered = FilterMinWords(records, o.min_words, components);
  log.Info("filtered", {{"original", Str(filtered.stats.original_count)},
                        {"used", Str(filtered.stats.used_count)}});
  const std::vector<EvalSet> sets = BuildEvalSets(filtered.records, components, o.n_set, *o.seed);

  const fs::path dir(o.output);
  EnsureDirectory(dir);
  ordered_json manifest;
  manifest["seed"] = *o.seed;
  manifest["components"] = components;
  manifest["n_set"] = o.n_set;
  manifest["filter"] = StatsToJson(filtered.stats);
  ordered_json variants = ordered_json::array();
  for (const EvalSet& set : sets) {
    const std::string file = set.variant.name + ".jsonl";
    WriteDataset(set.records, dir / file, DatasetFormat::kJsonl);
    ordered_json v;
    v["name"] = set.variant.name;
    v["file"] = file;
    v["component"] = set.variant.component ? ordered_json(*set.variant.component) : ordered_json();
    v["n"] = set.variant.n ? ordered_json(*set.variant.n) : ordered_json();
    v["count"] = set.records.size();
    v["dropped"] = set.dropped;
    variants.push_back(v);
    log.Info("variant", {{"name", set.variant.name},
                         {"count", Str(set.records.size())},
                         {"dropped", Str(set.dropped)}});
  }
  manifest["variants"] = variants;
  WriteStringToFile(dir / "eval_manifest.json", manifest.dump(2) + "\n");
  return kExitOk;
}

int RunScore(const Options& o, std::ostream& out, std::istream& in, Logger& log) {
  const std::vector<Record> records = LoadRecords(o.input, o.format, o.task, in);
  if (o.predictions.empty()) throw Error(ErrorCode::kInvalidArgument, "--predictions is required");
  std::string metric = o.metric.value_or("");
  if (metric.empty()) {
    metric = !records.empty() && records.front().task == Task::kExtractiveQa ? "exact_match"
                                                                              : "accuracy";
  }
  const ReportFormat format = ParseReportFormat(o.report_format);

  if (metric == "hans") {
    std::vector<std::pair<std::string, HansTable>> tables;
    MetricsReport combined;
    for (std::size_t i = 0; i < o.predictions.size(); ++i) {
      const std::string name = i < o.model_names.size() ? o.model_names[i]
                                                        : "model" + Str(i + 1);
      const std::vector<Prediction> preds =
          ParsePredictions(ReadFileToString(o.predictions[i]));
      HansTable table = ScoreHans(records, preds);
      MetricsReport part = table.ToReport(o.predictions.size() == 1 ? o.dataset
                                                                    : o.dataset + ":" + name);
      combined.rows.insert(combined.rows.end(), part.rows.begin(), part.rows.end());
      tables.emplace_back(name, table);
    }
    const std::string rendered = format == ReportFormat::kMarkdown ? RenderHansTable(tables)
                                                                   : RenderReport(combined, format);
    WriteOutput(o.output, rendered, out);
    log.Info("done", {{"metric", metric}, {"records", Str(records.size())}});
    return kExitOk;
  }

  if (o.predictions.size() != 1) {
    throw Error(ErrorCode::kInvalidArgument, "exactly one --predictions file is expected");
  }
  const std::vector<Prediction> preds = ParsePredictions(ReadFileToString(o.predictions[0]));
  std::set<std::string> invalid(o.invalid_labels.begin(), o.invalid_labels.end());
  if (invalid.empty()) invalid = DefaultInvalidLabels(records);
  ScoreContext context;
  context.dataset = o.dataset;
  context.variant = o.variant ? EvalVariant::Parse(*o.variant) : DetectVariant(records);
  MetricsReport report;
  if (metric == "accuracy") {
    report = Score(records, preds, invalid, context);
  } else if (metric == "exact_match") {
    report = ScoreDropEm(records, preds, invalid, context);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown metric " + metric);
  }
  WriteOutput(o.output, RenderReport(report, format), out);
  log.Info("done", {{"metric", metric},
                    {"variant", context.variant.name},
                    {"records", Str(records.size())}});
  return kExitOk;
}

int RunAggregate(const Options& o, std::ostream& out, Logger& log) {
  std::vector<MetricsReport> reports;
  for (const std::string& path : o.inputs) {
    reports.push_back(ParseReportCsv(ReadFileToString(path)));
  }
  const MetricsReport aggregated = Aggregate(reports);
  WriteOutput(o.output, RenderReport(aggregated, ParseReportFormat(o.report_format)), out);
  log.Info("done", {{"reports", Str(reports.size())}, {"rows", Str(aggregated.rows.size())}});
  return kExitOk;
}

int RunReport(const Options& o, std::ostream& out, std::istream& in, Logger& log) {
  const MetricsReport report = ParseReportCsv(ReadInput(o.input, in));
  WriteOutput(o.output, RenderReport(report, ParseReportFormat(o.report_format)), out);
  log.Info("done", {{"rows", Str(report.rows.size())}});
  return kExitOk;
}

ordered_json TrainReportToJson(const toy::TrainReport& report) {
  ordered_json j;
  j["epoch_loss"] = report.epoch_loss;
  j["dev_accuracy"] = report.dev_accuracy;
  j["stopped_epoch"] = report.stopped_epoch;
  j["best_epoch"] = report.best_epoch;
  j["best_checkpoint"] = report.best_checkpoint;
  return j;
}

int RunTrainToy(const Options& o, std::istream& in, Logger& log) {
  if (o.output == "-") throw Error(ErrorCode::kInvalidArgument, "--output must name a file");
  const std::vector<Record> train = LoadRecords(o.input, o.format, o.task, in);
  const std::vector<Record> dev = LoadRecords(o.dev, o.format, o.task, in);
  toy::ModelConfig config;
  config.seed = *o.seed;
  config.embed_dim = o.embed_dim;
  config.max_len = o.max_len;
  config.learning_rate = o.learning_rate;
  config.batch_size = o.batch_size;
  config.max_epochs = o.epochs;
  config.patience = o.patience;
  toy::TrainOptions options;
  if (o.word_vectors) options.word_vectors = fs::path(*o.word_vectors);
  toy::TrainReport report;
  const toy::ToyModel model = toy::Train(config, train, dev, &report, options);
  toy::SaveCheckpoint(model, o.output);
  if (o.train_report) WriteStringToFile(*o.train_report, TrainReportToJson(report).dump(2) + "\n");
  for (std::size_t e = 0; e < report.epoch_loss.size(); ++e) {
    log.Info("epoch", {{"epoch", Str(e + 1)},
                       {"loss", FormatFixed(report.epoch_loss[e], 6)},
                       {"dev_accuracy", FormatFixed(report.dev_accuracy[e], 2)}});
  }
  log.Info("done", {{"best", report.best_checkpoint}, {"labels", JoinNames(model.labels)}});
  return kExitOk;
}

int RunPredictToy(const Options& o, std::ostream& out, std::istream& in, Logger& log) {
  const toy::ToyModel model = toy::LoadCheckpoint(o.model);
  const std::vector<Record> records = LoadRecords(o.input, o.format, o.task, in);
  const std::vector<Prediction> preds = toy::Predict(model, records);
  WriteOutput(o.output, SerializePredictions(preds), out);
  log.Info("done", {{"records", Str(records.size())}});
  return kExitOk;
}

int RunGradCheck(const Options& o, std::ostream& out, Logger& log) {
  toy::GradCheckConfig config;
  config.seed = *o.seed;
  const toy::GradCheckResult result = toy::GradCheck(config);
  ordered_json j;
  j["max_relative_error"] = result.max_relative_error;
  j["worst_tensor"] = result.worst_tensor;
  j["worst_index"] = result.worst_index;
  j["tolerance"] = kGradCheckTolerance;
  const bool pass = result.max_relative_error < kGradCheckTolerance;
  j["pass"] = pass;
  WriteOutput(o.output, j.dump() + "\n", out);
  if (!pass) {
    log.Error("grad-check-failed", {{"tensor", result.worst_tensor}});
    return kExitData;
  }
  log.Info("done");
  return kExitOk;
}

void AddInput(CLI::App* app, Options& o) {
  app->add_option("--input", o.input, "Input file, '-' for stdin");
}

void AddOutput(CLI::App* app, Options& o, const std::string& what) {
  app->add_option("--output", o.output, what);
}

void AddRequiredOutput(CLI::App* app, Options& o, const std::string& what) {
  app->add_option("--output", o.output, what)->required()->default_str("");
}

void AddFormat(CLI::App* app, Options& o) {
  app->add_option("--format", o.format, "Input dataset format")
      ->check(CLI::IsMember({"jsonl", "glue_tsv", "drop_json", "swag_csv"}));
  app->add_option("--task", o.task,
                  "Expected task of every record (default: accept the task read from the input)")
      ->check(CLI::IsMember({"pair_classification", "single_sentence", "multiple_choice",
                             "extractive_qa"}));
}

void AddSeed(CLI::App* app, Options& o) {
  app->add_option("--seed", o.seed, "Master seed (unsigned 64-bit)")->required();
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in) {
  Options o;
  CLI::App app{"Word-order perturbation, forced-invalidation augmentation and scoring"};
  app.name(args.empty() ? "wordorder" : fs::path(args[0]).filename().string());
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  CLI::App* permute = app.add_subcommand("permute", "Permute n-gram chunks of each input line");
  AddInput(permute, o);
  AddOutput(permute, o, "Output file, '-' for stdout");
  permute->add_option("--text", o.text, "Permute this text instead of reading --input");
  permute->add_option("--n", o.n, "Chunk size")->check(CLI::Range(1, 3));
  permute->add_option("--mode", o.mode, "Permutation constraint")
      ->check(CLI::IsMember({"differs", "derangement"}));
  AddSeed(permute, o);

  CLI::App* augment = app.add_subcommand(
      "augment", "Filter, augment with invalid samples, and split into train.jsonl and dev.jsonl");
  AddInput(augment, o);
  AddRequiredOutput(augment, o, "Output directory");
  AddFormat(augment, o);
  augment->add_option("--n", o.n_set, "Comma-separated n-gram sizes")
      ->delimiter(',')
      ->check(CLI::Range(1, 3));
  augment->add_option("--mode", o.mode, "Permutation constraint")
      ->check(CLI::IsMember({"differs", "derangement"}));
  augment->add_option("--components", o.components,
                      "Comma-separated target components (default: the task's defaults)")
      ->delimiter(',');
  augment->add_option("--ratio", o.ratio, "Invalid samples per valid sample");
  augment->add_option("--invalid-label-mode", o.invalid_label_mode, "Invalid label scheme")
      ->check(CLI::IsMember({"single", "per_component"}));
  augment->add_option("--min-words", o.min_words, "Minimum words per target component")
      ->check(CLI::PositiveNumber);
  augment->add_option("--split-fraction", o.split_fraction, "Fraction of records sent to train");
  augment->add_flag("--split-before-augment", o.split_before_augment,
                    "Keep each invalid sample in the same split as its source");
  AddSeed(augment, o);

  CLI::App* make_eval = app.add_subcommand(
      "make-eval", "Write the unperturbed dev set and one permuted set per component and n");
  AddInput(make_eval, o);
  AddRequiredOutput(make_eval, o, "Output directory");
  AddFormat(make_eval, o);
  make_eval->add_option("--n", o.n_set, "Comma-separated n-gram sizes")
      ->delimiter(',')
      ->check(CLI::Range(1, 3));
  make_eval->add_option("--components", o.components,
                        "Comma-separated components to permute (default: the task's defaults)")
      ->delimiter(',');
  make_eval->add_option("--min-words", o.min_words, "Minimum words per listed component")
      ->check(CLI::PositiveNumber);
  AddSeed(make_eval, o);

  CLI::App* score = app.add_subcommand("score", "Score a prediction file against an eval set");
  AddInput(score, o);
  AddOutput(score, o, "Report output, '-' for stdout");
  AddFormat(score, o);
  score->add_option("--predictions", o.predictions,
                    "Prediction file(s); several are accepted with --metric hans")
      ->required();
  score->add_option("--metric", o.metric,
                    "Metric (default: exact_match for extractive_qa, accuracy otherwise)")
      ->check(CLI::IsMember({"accuracy", "exact_match", "hans"}));
  score->add_option("--variant", o.variant,
                    "Variant name such as dev or part1-3gram (default: read from provenance)");
  score->add_option("--dataset", o.dataset, "Dataset name written to the report");
  score->add_option("--invalid-labels", o.invalid_labels,
                    "Comma-separated labels counted as invalid (default: invalid and "
                    "invalid_<component> for the task's components)")
      ->delimiter(',');
  score->add_option("--model-names", o.model_names,
                    "Comma-separated model names for the HANS table (default: model1, model2, ...)")
      ->delimiter(',');
  score->add_option("--report-format", o.report_format, "Report format")
      ->check(CLI::IsMember({"csv", "markdown", "svg_bars"}));

  CLI::App* aggregate = app.add_subcommand(
      "aggregate", "Average report CSVs from several seeds (mean and population std)");
  aggregate->add_option("--input", o.inputs, "Report CSV files")->required();
  AddOutput(aggregate, o, "Output, '-' for stdout");
  aggregate->add_option("--report-format", o.report_format, "Report format")
      ->check(CLI::IsMember({"csv", "markdown", "svg_bars"}));

  CLI::App* report = app.add_subcommand("report", "Render a report CSV");
  AddInput(report, o);
  AddOutput(report, o, "Output, '-' for stdout");
  report->add_option("--report-format", o.report_format, "Report format")
      ->check(CLI::IsMember({"csv", "markdown", "svg_bars"}));

  CLI::App* train_toy = app.add_subcommand(
      "train-toy", "Train the attention-pooling toy classifier and save a checkpoint");
  AddInput(train_toy, o);
  AddRequiredOutput(train_toy, o, "Checkpoint file");
  AddFormat(train_toy, o);
  train_toy->add_option("--dev", o.dev, "Dev records used for early stopping")->required();
  train_toy->add_option("--embed-dim", o.embed_dim, "Embedding width");
  train_toy->add_option("--max-len", o.max_len, "Maximum sequence length");
  train_toy->add_option("--learning-rate", o.learning_rate, "Adam step size");
  train_toy->add_option("--batch-size", o.batch_size, "Mini-batch size");
  train_toy->add_option("--epochs", o.epochs, "Maximum epochs");
  train_toy->add_option("--patience", o.patience, "Epochs without dev improvement before stopping");
  train_toy->add_option("--word-vectors", o.word_vectors,
                        "Optional word-vector text file used to initialise embeddings");
  train_toy->add_option("--train-report", o.train_report,
                        "Optional path for the per-epoch training report (JSON)");
  AddSeed(train_toy, o);

  CLI::App* predict_toy = app.add_subcommand("predict-toy", "Write predictions from a checkpoint");
  AddInput(predict_toy, o);
  AddOutput(predict_toy, o, "Prediction file, '-' for stdout");
  AddFormat(predict_toy, o);
  predict_toy->add_option("--model", o.model, "Checkpoint file")->required();

  CLI::App* grad_check = app.add_subcommand(
      "grad-check", "Compare analytic and finite-difference gradients on a tiny model");
  AddOutput(grad_check, o, "Result output, '-' for stdout");
  AddSeed(grad_check, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  Logger log(err, chosen->get_name());
  try {
    if (chosen == permute) return RunPermute(o, out, in, log);
    if (chosen == augment) return RunAugment(o, in, log);
    if (chosen == make_eval) return RunMakeEval(o, in, log);
    if (chosen == score) return RunScore(o, out, in, log);
    if (chosen == aggregate) return RunAggregate(o, out, log);
    if (chosen == report) return RunReport(o, out, in, log);
    if (chosen == train_toy) return RunTrainToy(o, in, log);
    if (chosen == predict_toy) return RunPredictToy(o, out, in, log);
    if (chosen == grad_check) return RunGradCheck(o, out, log);
  } catch (const Error& e) {
    log.Error("failed", {{"code", ErrorCodeName(e.code())}, {"message", e.what()}});
    return e.code() == ErrorCode::kInvalidArgument ? kExitUsage : kExitData;
  } catch (const std::exception& e) {
    log.Error("failed", {{"message", e.what()}});
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace wordorder::cli
