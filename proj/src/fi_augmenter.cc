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

#include "wordorder/fi_augmenter.h"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_set>

#include "wordorder/error.h"
#include "wordorder/seed.h"
#include "wordorder/unicode_text.h"

namespace wordorder {

using nlohmann::ordered_json;

namespace {

std::int64_t ParseInt(std::string_view text) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "bad number '" + std::string(text) + "'");
  }
  return value;
}

struct Pick {
  std::size_t record;  // index into the input
  std::size_t pass;    // how many times this source was drawn before
  int n = 0;
};

std::string PassSuffix(std::size_t pass) {
  return pass == 0 ? "" : "#" + std::to_string(pass);
}

// Orders indices by a per-id hash so the result does not depend on the input
// order of the records.
void SortByHash(std::vector<std::size_t>& indices, std::span<const Record> records,
                std::uint64_t master, std::string_view stream, std::size_t pass) {
  const std::string pass_text = std::to_string(pass);
  std::vector<std::tuple<std::uint64_t, std::string_view, std::size_t>> keyed;
  keyed.reserve(indices.size());
  for (std::size_t i : indices) {
    keyed.emplace_back(DeriveSeed(master, {records[i].id, stream, pass_text}),
                       records[i].id, i);
  }
  std::sort(keyed.begin(), keyed.end());
  for (std::size_t j = 0; j < keyed.size(); ++j) indices[j] = std::get<2>(keyed[j]);
}

}  // namespace

Ratio Ratio::Parse(std::string_view text) {
  text = TrimWhitespace(text);
  Ratio r;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    r.num = ParseInt(text.substr(0, slash));
    r.den = ParseInt(text.substr(slash + 1));
  } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 9) {
      throw Error(ErrorCode::kInvalidArgument, "bad decimal '" + std::string(text) + "'");
    }
    r.den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) r.den *= 10;
    r.num = (whole.empty() ? 0 : ParseInt(whole)) * r.den + ParseInt(frac);
  } else {
    r.num = ParseInt(text);
    r.den = 1;
  }
  if (r.num < 0 || r.den <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "ratio must be non-negative: " + std::string(text));
  }
  const std::int64_t g = std::gcd(r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

std::size_t Ratio::FloorTimes(std::size_t count) const {
  return static_cast<std::size_t>(
      (static_cast<__int128>(num) * static_cast<__int128>(count)) / den);
}

std::size_t Ratio::RoundTimes(std::size_t count) const {
  const __int128 twice = 2 * static_cast<__int128>(num) * static_cast<__int128>(count);
  return static_cast<std::size_t>((twice + den) / (2 * static_cast<__int128>(den)));
}

std::string Ratio::ToString() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

const char* InvalidLabelModeName(InvalidLabelMode mode) {
  return mode == InvalidLabelMode::kSingle ? "single" : "per_component";
}

InvalidLabelMode ParseInvalidLabelMode(std::string_view name) {
  if (name == "single") return InvalidLabelMode::kSingle;
  if (name == "per_component") return InvalidLabelMode::kPerComponent;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown invalid-label mode '" + std::string(name) + "'");
}

std::vector<std::string> DefaultTargetComponents(Task task) {
  switch (task) {
    case Task::kPairClassification: return {"part1", "part2"};
    case Task::kSingleSentence: return {"part1"};
    case Task::kMultipleChoice: return {"context", std::string(kEndingsGroup)};
    case Task::kExtractiveQa: return {"passage", "question"};
  }
  return {};
}

std::string InvalidLabelFor(InvalidLabelMode mode, std::string_view component) {
  if (mode == InvalidLabelMode::kSingle) return std::string(kInvalidLabel);
  return std::string(kInvalidLabel) + "_" + std::string(component);
}

std::vector<std::string> CollectClassLabels(std::span<const Record> records) {
  std::set<std::string> seen;
  for (const Record& r : records) {
    if (r.gold.kind() == Label::Kind::kClass) seen.insert(r.gold.class_name());
  }
  static const std::vector<std::vector<std::string>> kConventional = {
      {"entailment", "neutral", "contradiction"},
      {"entailment", "not_entailment"},
      {"entailment", "non-entailment"},
      {"acceptable", "unacceptable"},
  };
  for (const auto& order : kConventional) {
    const std::set<std::string> known(order.begin(), order.end());
    if (!seen.empty() && std::includes(known.begin(), known.end(), seen.begin(), seen.end())) {
      std::vector<std::string> out;
      for (const std::string& label : order) {
        if (seen.count(label)) out.push_back(label);
      }
      return out;
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<std::string> MakeLabelSpace(Task task,
                                        std::span<const std::string> original_labels,
                                        InvalidLabelMode mode,
                                        std::span<const std::string> target_components) {
  if (task == Task::kMultipleChoice) {
    throw Error(ErrorCode::kUnsupportedTask,
                "multiple choice flags invalid input with an extra ending, not a class");
  }
  if (task == Task::kExtractiveQa && mode == InvalidLabelMode::kSingle) {
    throw Error(ErrorCode::kUnsupportedTask,
                "extractive QA needs per_component invalid labels");
  }
  std::vector<std::string> labels(original_labels.begin(), original_labels.end());
  if (mode == InvalidLabelMode::kSingle) {
    labels.emplace_back(kInvalidLabel);
    return labels;
  }
  for (const std::string& component : target_components) {
    CheckComponentName(task, component);
    labels.push_back(InvalidLabelFor(mode, component));
  }
  return labels;
}

bool IsTargetPermutable(const Record& record, std::string_view target, int n,
                        PermutationMode mode) {
  const std::vector<std::string> names = ExpandComponent(record, target);
  if (names.empty()) return false;
  for (const std::string& name : names) {
    const std::string& text = record.Get(name);
    if (TrimWhitespace(text).empty()) return false;
    if (!IsPermutable(Tokenize(text).tokens, n, mode)) return false;
  }
  return true;
}

Record PerturbRecord(const Record& record, std::string_view target, int n,
                     PermutationMode mode, std::uint64_t seed) {
  Record out = record;
  for (const std::string& name : ExpandComponent(record, target)) {
    *out.Find(name) = Permute(record.Get(name), {n, mode, DeriveSeed(seed, {name})});
  }
  return out;
}

std::size_t AugmentManifest::CountForN(int n) const {
  std::size_t total = 0;
  for (const auto& [key, count] : counts) {
    if (key.first == n) total += count;
  }
  return total;
}

ordered_json AugmentManifest::ToJson() const {
  ordered_json out;
  ordered_json cfg;
  cfg["ratio"] = config.ratio.ToString();
  cfg["n_set"] = config.n_set;
  cfg["invalid_label_mode"] = InvalidLabelModeName(config.invalid_label_mode);
  cfg["target_components"] = target_components;
  cfg["min_words"] = config.min_words;
  cfg["split_fraction"] = config.split_fraction.ToString();
  cfg["mode"] = PermutationModeName(config.mode);
  cfg["split_before_augment"] = config.split_before_augment;
  out["config"] = std::move(cfg);
  out["master_seed"] = config.master_seed;
  out["label_space"] = label_space;
  out["valid_count"] = valid_count;
  out["invalid_count"] = invalid_count;
  out["train_count"] = train_count;
  out["dev_count"] = dev_count;
  out["reused_sources"] = reused_sources;
  ordered_json per_n = ordered_json::object();
  for (int n : config.n_set) per_n[std::to_string(n)] = CountForN(n);
  out["invalid_per_n"] = std::move(per_n);
  ordered_json count_rows = ordered_json::array();
  for (const auto& [key, count] : counts) {
    count_rows.push_back({{"n", key.first}, {"component", key.second}, {"count", count}});
  }
  out["counts"] = std::move(count_rows);
  ordered_json skip_rows = ordered_json::array();
  for (const auto& [id, reason] : skipped) {
    skip_rows.push_back({{"source_id", id}, {"reason", reason}});
  }
  out["skipped"] = std::move(skip_rows);
  ordered_json reassign_rows = ordered_json::array();
  for (const Reassignment& r : reassigned) {
    reassign_rows.push_back({{"source_id", r.source_id}, {"from_n", r.from_n}, {"to_n", r.to_n}});
  }
  out["reassigned"] = std::move(reassign_rows);
  return out;
}

AugmentResult Augment(std::span<const Record> records, const AugmentConfig& config) {
  if (config.n_set.empty()) throw Error(ErrorCode::kInvalidArgument, "n_set is empty");
  std::vector<int> n_set = config.n_set;
  std::sort(n_set.begin(), n_set.end());
  n_set.erase(std::unique(n_set.begin(), n_set.end()), n_set.end());
  for (int n : n_set) {
    if (n < 1 || n > 3) throw Error(ErrorCode::kInvalidArgument, "n must be 1, 2 or 3");
  }
  if (config.ratio.num <= 0) throw Error(ErrorCode::kInvalidArgument, "ratio must be positive");
  if (config.split_fraction.num <= 0 || config.split_fraction.num >= config.split_fraction.den) {
    throw Error(ErrorCode::kInvalidArgument, "split fraction must lie in (0, 1)");
  }

  AugmentResult result;
  AugmentManifest& manifest = result.manifest;
  manifest.config = config;
  manifest.config.n_set = n_set;
  if (records.empty()) return result;

  const Task task = records[0].task;
  std::unordered_set<std::string_view> ids;
  for (const Record& r : records) {
    if (r.task != task) throw Error(ErrorCode::kSchemaError, "records mix tasks");
    if (!ids.insert(r.id).second) {
      throw Error(ErrorCode::kSchemaError, "duplicate record id '" + r.id + "'");
    }
  }
  const std::vector<std::string> targets = config.target_components.empty()
                                               ? DefaultTargetComponents(task)
                                               : config.target_components;
  for (const std::string& t : targets) CheckComponentName(task, t);
  manifest.target_components = targets;
  const bool multiple_choice = task == Task::kMultipleChoice;
  if (!multiple_choice) {
    manifest.label_space = MakeLabelSpace(task, CollectClassLabels(records),
                                          config.invalid_label_mode, targets);
  }

  // feasible[i][k]: targets of record i permutable at n_set[k].
  std::vector<std::vector<std::vector<std::size_t>>> feasible(records.size());
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < records.size(); ++i) {
    bool any = false;
    feasible[i].resize(n_set.size());
    for (std::size_t k = 0; k < n_set.size(); ++k) {
      for (std::size_t t = 0; t < targets.size(); ++t) {
        if (IsTargetPermutable(records[i], targets[t], n_set[k], config.mode)) {
          feasible[i][k].push_back(t);
          any = true;
        }
      }
    }
    if (any) {
      candidates.push_back(i);
    } else {
      manifest.skipped.emplace_back(records[i].id, "no target component is permutable at any n");
    }
  }

  const std::size_t invalid_slots = config.ratio.FloorTimes(records.size());
  if (invalid_slots > 0 && candidates.empty()) {
    throw Error(ErrorCode::kNothingPermutable,
                "none of " + std::to_string(records.size()) +
                    " records admits a configured permutation");
  }

  // Draw sources without replacement, one hashed pass at a time.
  std::vector<Pick> picks;
  picks.reserve(invalid_slots);
  for (std::size_t pass = 0; picks.size() < invalid_slots; ++pass) {
    std::vector<std::size_t> order = candidates;
    SortByHash(order, records, config.master_seed, "select", pass);
    for (std::size_t i : order) {
      if (picks.size() == invalid_slots) break;
      picks.push_back({i, pass, 0});
      if (pass > 0) ++manifest.reused_sources;
    }
  }

  // Round-robin n over a hashed order of the picks.
  {
    std::vector<std::size_t> slot_order(picks.size());
    std::iota(slot_order.begin(), slot_order.end(), std::size_t{0});
    std::vector<std::tuple<std::uint64_t, std::string_view, std::size_t, std::size_t>> keyed;
    for (std::size_t s : slot_order) {
      const Record& r = records[picks[s].record];
      keyed.emplace_back(DeriveSeed(config.master_seed,
                                    {r.id, "n-assign", std::to_string(picks[s].pass)}),
                         r.id, picks[s].pass, s);
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t j = 0; j < keyed.size(); ++j) {
      picks[std::get<3>(keyed[j])].n = n_set[j % n_set.size()];
    }
  }

  std::vector<Record> outputs;
  outputs.reserve(records.size() + picks.size());
  for (const Record& r : records) {
    Record valid = r;
    valid.provenance = Provenance{r.id, std::nullopt, std::nullopt, config.mode};
    outputs.push_back(std::move(valid));
  }
  for (const Pick& pick : picks) {
    const Record& source = records[pick.record];
    const std::string pass_text = std::to_string(pick.pass);
    Rng rng(pick.pass == 0
                ? DeriveSeed(config.master_seed, {source.id, "augment"})
                : DeriveSeed(config.master_seed, {source.id, "augment", pass_text}));
    int n = pick.n;
    std::size_t k = static_cast<std::size_t>(
        std::find(n_set.begin(), n_set.end(), n) - n_set.begin());
    if (feasible[pick.record][k].empty()) {
      for (std::size_t kk = n_set.size(); kk-- > 0;) {
        if (!feasible[pick.record][kk].empty()) {
          k = kk;
          break;
        }
      }
      manifest.reassigned.push_back({source.id, n, n_set[k]});
      n = n_set[k];
    }
    const std::vector<std::size_t>& options = feasible[pick.record][k];
    const std::string& target = targets[options[UniformBelow(rng, options.size())]];

    Record invalid = PerturbRecord(source, target, n, config.mode, rng());
    invalid.id = source.id + "#invalid" + PassSuffix(pick.pass);
    invalid.provenance = Provenance{source.id, target, n, config.mode};
    if (multiple_choice) {
      invalid.gold = Label::Choice(static_cast<int>(CountEndings(source)));
    } else {
      invalid.gold = Label::Class(InvalidLabelFor(config.invalid_label_mode, target));
    }
    ++manifest.counts[{n, target}];
    outputs.push_back(std::move(invalid));
  }
  if (multiple_choice) {
    for (Record& r : outputs) {
      r.components.push_back({EndingName(CountEndings(r)), std::string(kInvalidChoiceText)});
    }
  }
  manifest.valid_count = records.size();
  manifest.invalid_count = picks.size();

  // Order-independent split: sort by id, then one seeded shuffle.
  std::sort(outputs.begin(), outputs.end(),
            [](const Record& a, const Record& b) { return a.id < b.id; });
  Rng split_rng(DeriveSeed(config.master_seed, {"split"}));
  std::vector<std::size_t> order(outputs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Shuffle(std::span<std::size_t>(order), split_rng);

  if (!config.split_before_augment) {
    const std::size_t train_size = config.split_fraction.RoundTimes(outputs.size());
    for (std::size_t j = 0; j < order.size(); ++j) {
      (j < train_size ? result.train : result.dev).push_back(std::move(outputs[order[j]]));
    }
  } else {
    std::vector<std::string> valid_ids;
    for (std::size_t j : order) {
      if (!outputs[j].provenance->perturbed_component) valid_ids.push_back(outputs[j].id);
    }
    const std::size_t train_size = config.split_fraction.RoundTimes(valid_ids.size());
    const std::unordered_set<std::string> train_sources(
        valid_ids.begin(), valid_ids.begin() + static_cast<std::ptrdiff_t>(train_size));
    for (std::size_t j : order) {
      const bool train = train_sources.count(outputs[j].provenance->source_id) > 0;
      (train ? result.train : result.dev).push_back(std::move(outputs[j]));
    }
  }
  manifest.train_count = result.train.size();
  manifest.dev_count = result.dev.size();
  return result;
}

}  // namespace wordorder
