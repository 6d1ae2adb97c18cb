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

// Acceptance suite: one PASS/FAIL/SKIP line per criterion. Exits nonzero on
// any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support/generators.h"
#include "wordorder/dataset_io.h"
#include "wordorder/error.h"
#include "wordorder/eval_harness.h"
#include "wordorder/fi_augmenter.h"
#include "wordorder/ngram_permuter.h"
#include "wordorder/seed.h"
#include "wordorder/toy_training.h"
#include "wordorder/unicode_text.h"

namespace wordorder {
namespace {

using Strings = std::vector<std::string>;

enum class Verdict { kPass, kFail, kSkip };

struct Outcome {
  Verdict verdict = Verdict::kFail;
  std::string detail;
};

Outcome Pass(std::string detail) { return {Verdict::kPass, std::move(detail)}; }
Outcome Fail(std::string detail) { return {Verdict::kFail, std::move(detail)}; }
Outcome Skip(std::string detail) { return {Verdict::kSkip, std::move(detail)}; }

std::string Join(const Strings& words) {
  std::string out;
  for (const std::string& w : words) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

std::vector<Strings> Chunks(const Strings& body, int n) {
  std::vector<Strings> out;
  for (std::size_t i = 0; i < body.size(); i += static_cast<std::size_t>(n)) {
    out.emplace_back(body.begin() + static_cast<long>(i),
                     body.begin() + static_cast<long>(std::min(body.size(), i + n)));
  }
  return out;
}

// True if `out` is the chunks of `chunks` laid end to end in some order;
// with `deranged`, slot i may not hold content equal to chunks[i].
bool Decomposes(const Strings& out, std::size_t pos, std::size_t slot,
                const std::vector<Strings>& chunks, std::vector<bool>& used, bool deranged) {
  if (slot == chunks.size()) return pos == out.size();
  std::set<Strings> tried;
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    if (used[c] || !tried.insert(chunks[c]).second) continue;
    const Strings& chunk = chunks[c];
    if (deranged && chunk == chunks[slot]) continue;
    if (pos + chunk.size() > out.size()) continue;
    if (!std::equal(chunk.begin(), chunk.end(), out.begin() + static_cast<long>(pos))) continue;
    used[c] = true;
    const bool ok = Decomposes(out, pos + chunk.size(), slot + 1, chunks, used, deranged);
    used[c] = false;
    if (ok) return true;
  }
  return false;
}

struct Anchored {
  Strings body;
  std::string punct;
  bool punct_is_token = false;
};

// Final punctuation: a trailing all-punctuation word, else the last code
// point of the last word; never when nothing would remain.
Anchored Anchor(const Strings& words) {
  Anchored a;
  a.body = words;
  if (words.empty()) return a;
  const std::string& last = words.back();
  if (words.size() > 1 && IsAllPunctuation(last)) {
    a.punct = last;
    a.punct_is_token = true;
    a.body.pop_back();
    return a;
  }
  const std::size_t cut = LastCodePointOffset(last);
  if (cut > 0 && IsAllPunctuation(std::string_view(last).substr(cut))) {
    a.punct = last.substr(cut);
    a.body.back() = last.substr(0, cut);
  }
  return a;
}

// Permutation property suite over random texts.
Outcome PropertySuite() {
  constexpr std::size_t kPerConfig = 1000;
  std::size_t checked = 0;
  for (int n = 1; n <= 3; ++n) {
    for (PermutationMode mode : {PermutationMode::kDiffers, PermutationMode::kDerangement}) {
      Rng rng(DeriveSeed(2024, {"property", std::to_string(n), PermutationModeName(mode)}));
      std::size_t done = 0;
      std::size_t attempts = 0;
      while (done < kPerConfig) {
        if (++attempts > 50 * kPerConfig) return Fail("too few permutable inputs");
        const std::string text = testing::RandomText(rng, 2, 30, testing::TextStyle::kAnything);
        const Strings words = SplitOnWhitespace(text);
        const std::uint64_t seed = rng();
        std::string output;
        try {
          output = Permute(text, {n, mode, seed});
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kNotPermutable) return Fail(std::string("error ") + e.what());
          continue;
        }
        std::ostringstream where;
        where << "n=" << n << " mode=" << PermutationModeName(mode) << " input '" << text
              << "' output '" << output << "'";
        const Strings out_words = SplitOnWhitespace(output);
        const Anchored in = Anchor(words);
        Anchored out;
        out.body = out_words;
        if (!in.punct.empty()) {
          if (in.punct_is_token) {
            if (out_words.empty() || out_words.back() != in.punct) {
              return Fail("punctuation token moved: " + where.str());
            }
            out.body.pop_back();
          } else {
            const std::string& last = out.body.back();
            if (last.size() <= in.punct.size() ||
                last.compare(last.size() - in.punct.size(), in.punct.size(), in.punct) != 0) {
              return Fail("attached punctuation moved: " + where.str());
            }
            out.body.back() = last.substr(0, last.size() - in.punct.size());
          }
        }
        Strings a = in.body;
        Strings b = out.body;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return Fail("token multiset changed: " + where.str());
        if (Join(out_words) == Join(words)) return Fail("output equals input: " + where.str());
        const std::vector<Strings> chunks = Chunks(in.body, n);
        std::vector<bool> used(chunks.size(), false);
        if (!Decomposes(out.body, 0, 0, chunks, used, false)) {
          return Fail("output is not a chunk reordering: " + where.str());
        }
        if (mode == PermutationMode::kDerangement &&
            !Decomposes(out.body, 0, 0, chunks, used, true)) {
          return Fail("derangement violated: " + where.str());
        }
        ++done;
        ++checked;
      }
    }
  }
  return Pass(std::to_string(checked) + " outputs checked over 6 (n, mode) configs");
}

// Exhaustive oracle over every token string of length <= 9 drawn from
// {a, b, c, .}. Valid output sets are enumerated per symbol pattern and
// shared by all relabelings of that pattern.
constexpr int kAlphabet = 4;
constexpr int kMaxLength = 9;
const char* const kSymbols[kAlphabet] = {"a", "b", "c", "."};
constexpr int kDot = 3;

std::uint32_t Encode(const std::vector<int>& symbols) {
  std::uint32_t code = 0;
  for (int s : symbols) code = code * kAlphabet + static_cast<std::uint32_t>(s);
  return code;
}

// Valid outputs of `pattern` in pattern symbols, by [n-1][mode][detached].
using ValidSets = std::array<std::array<std::array<std::vector<std::uint32_t>, 2>, 2>, 3>;

ValidSets EnumerateValid(const std::vector<int>& pattern) {
  ValidSets sets;
  const std::size_t len = pattern.size();
  for (int detached = 0; detached < 2; ++detached) {
    if (detached && len < 2) continue;
    const std::vector<int> body(pattern.begin(), pattern.end() - detached);
    for (int n = 1; n <= 3; ++n) {
      std::vector<std::vector<int>> chunks;
      for (std::size_t i = 0; i < body.size(); i += static_cast<std::size_t>(n)) {
        chunks.emplace_back(body.begin() + static_cast<long>(i),
                            body.begin() + static_cast<long>(std::min(body.size(), i + n)));
      }
      std::vector<std::vector<int>> distinct = chunks;
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      std::vector<std::size_t> original;
      for (const auto& c : chunks) {
        original.push_back(static_cast<std::size_t>(
            std::lower_bound(distinct.begin(), distinct.end(), c) - distinct.begin()));
      }
      // Outputs are encoded chunk by chunk: code * 4^len(chunk) + chunk code.
      std::vector<std::uint32_t> chunk_code;
      std::vector<std::uint32_t> chunk_scale;
      for (const auto& c : distinct) {
        chunk_code.push_back(Encode(c));
        chunk_scale.push_back(1u << (2 * c.size()));
      }
      const std::uint32_t body_code = Encode(body);
      std::vector<std::size_t> arrangement = original;
      std::sort(arrangement.begin(), arrangement.end());
      std::vector<std::uint32_t>& differs = sets[n - 1][0][detached];
      std::vector<std::uint32_t>& deranged = sets[n - 1][1][detached];
      do {
        std::uint32_t code = 0;
        for (std::size_t c : arrangement) code = code * chunk_scale[c] + chunk_code[c];
        if (code == body_code) continue;
        if (detached) code = code * kAlphabet + static_cast<std::uint32_t>(pattern.back());
        differs.push_back(code);
        bool all_moved = true;
        for (std::size_t i = 0; i < arrangement.size(); ++i) {
          if (arrangement[i] == original[i]) all_moved = false;
        }
        if (all_moved) deranged.push_back(code);
      } while (std::next_permutation(arrangement.begin(), arrangement.end()));
      for (auto* codes : {&differs, &deranged}) {
        std::sort(codes->begin(), codes->end());
        codes->erase(std::unique(codes->begin(), codes->end()), codes->end());
      }
    }
  }
  return sets;
}

// Restricted growth strings: first occurrences of symbols appear in order.
void ForEachPattern(std::size_t len, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> p(len, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int max_used) {
    if (i == len) {
      fn(p);
      return;
    }
    for (int s = 0; s <= std::min(max_used + 1, kAlphabet - 1); ++s) {
      p[i] = s;
      rec(i + 1, std::max(max_used, s));
    }
  };
  p[0] = 0;
  rec(1, 0);
}

Outcome OracleEquivalence() {
  std::size_t inputs = 0;
  std::size_t calls = 0;
  std::size_t not_permutable = 0;
  const PermutationMode modes[2] = {PermutationMode::kDiffers, PermutationMode::kDerangement};
  std::string failure;
  for (std::size_t len = 1; len <= kMaxLength && failure.empty(); ++len) {
    ForEachPattern(len, [&](const std::vector<int>& pattern) {
      if (!failure.empty()) return;
      const ValidSets sets = EnumerateValid(pattern);
      const int used = *std::max_element(pattern.begin(), pattern.end()) + 1;
      std::array<int, kAlphabet> labels = {0, 1, 2, 3};
      std::set<std::vector<int>> seen;
      do {
        const std::vector<int> relabel(labels.begin(), labels.begin() + used);
        if (!seen.insert(relabel).second) continue;
        ++inputs;
        std::array<int, kAlphabet> inverse;
        inverse.fill(-1);
        for (int s = 0; s < used; ++s) inverse[relabel[s]] = s;
        Strings words;
        for (int s : pattern) words.push_back(kSymbols[relabel[s]]);
        const std::string text = Join(words);
        const int detached = len > 1 && relabel[pattern.back()] == kDot ? 1 : 0;
        for (int n = 1; n <= 3; ++n) {
          for (int m = 0; m < 2; ++m) {
            const std::vector<std::uint32_t>& valid = sets[n - 1][m][detached];
            ++calls;
            const std::uint64_t seed = calls * 0x9e3779b97f4a7c15ULL;
            std::string output;
            try {
              output = Permute(text, {n, modes[m], seed});
            } catch (const Error& e) {
              if (e.code() == ErrorCode::kNotPermutable && valid.empty()) {
                ++not_permutable;
                continue;
              }
              failure = "'" + text + "' n=" + std::to_string(n) + " " +
                        PermutationModeName(modes[m]) + ": " + e.what() + " but " +
                        std::to_string(valid.size()) + " valid outputs exist";
              return;
            }
            std::vector<int> back;
            for (const std::string& w : SplitOnWhitespace(output)) {
              int sym = -1;
              for (int s = 0; s < kAlphabet; ++s) {
                if (w == kSymbols[s]) sym = inverse[s];
              }
              if (sym < 0) {
                back.clear();
                break;
              }
              back.push_back(sym);
            }
            if (back.size() != len ||
                !std::binary_search(valid.begin(), valid.end(), Encode(back))) {
              failure = "'" + text + "' n=" + std::to_string(n) + " " +
                        PermutationModeName(modes[m]) + " produced invalid '" + output + "'";
              return;
            }
          }
        }
      } while (std::next_permutation(labels.begin(), labels.end()));
    });
  }
  if (!failure.empty()) return Fail(failure);
  return Pass(std::to_string(inputs) + " inputs, " + std::to_string(calls) + " permute calls, " +
              std::to_string(not_permutable) + " correctly rejected");
}

Record MakeRecord(std::string id, Task task, std::vector<Component> components, Label gold) {
  Record r;
  r.id = std::move(id);
  r.task = task;
  r.components = std::move(components);
  r.gold = std::move(gold);
  return r;
}

std::string AugmentFiles(std::span<const Record> records, std::uint64_t seed) {
  AugmentConfig config;
  config.master_seed = seed;
  const AugmentResult result = Augment(records, config);
  return SerializeDataset(result.train, DatasetFormat::kJsonl) + "\n--\n" +
         SerializeDataset(result.dev, DatasetFormat::kJsonl) + "\n--\n" +
         result.manifest.ToJson().dump(2);
}

std::string EvalFiles(std::span<const Record> records, std::uint64_t seed) {
  const Strings components = {"part1", "part2"};
  const std::vector<int> n_set = {1, 2, 3};
  std::string out;
  for (const EvalSet& set : BuildEvalSets(records, components, n_set, seed)) {
    out += set.variant.name + "\n" + SerializeDataset(set.records, DatasetFormat::kJsonl);
  }
  return out;
}

std::multiset<std::string> InvalidContent(std::span<const Record> records) {
  std::multiset<std::string> out;
  for (const Record& r : records) {
    if (r.provenance && r.provenance->perturbed_component) {
      out.insert(r.provenance->source_id + "|" + r.Get(*r.provenance->perturbed_component));
    }
  }
  return out;
}

Outcome Determinism() {
  const std::vector<Record> records = testing::RandomRecords(
      Task::kPairClassification, 400, 31, testing::TextStyle::kAnything, true);
  const std::string a1 = AugmentFiles(records, 5);
  const std::string a2 = AugmentFiles(records, 5);
  if (a1 != a2) return Fail("augment output differs between identical runs");
  const std::string e1 = EvalFiles(records, 5);
  const std::string e2 = EvalFiles(records, 5);
  if (e1 != e2) return Fail("build_eval_sets output differs between identical runs");

  AugmentConfig c5;
  c5.master_seed = 5;
  AugmentConfig c6;
  c6.master_seed = 6;
  const AugmentResult r5 = Augment(records, c5);
  const AugmentResult r6 = Augment(records, c6);
  std::vector<Record> all5 = r5.train;
  all5.insert(all5.end(), r5.dev.begin(), r5.dev.end());
  std::vector<Record> all6 = r6.train;
  all6.insert(all6.end(), r6.dev.begin(), r6.dev.end());
  if (InvalidContent(all5) == InvalidContent(all6)) {
    return Fail("augment invalid samples identical across seeds");
  }
  const Strings components = {"part1", "part2"};
  const std::vector<int> n_set = {1, 2, 3};
  const auto s5 = BuildEvalSets(records, components, n_set, 5);
  const auto s6 = BuildEvalSets(records, components, n_set, 6);
  for (std::size_t v = 1; v < s5.size(); ++v) {
    if (s5[v].records == s6[v].records) {
      return Fail("eval variant " + s5[v].variant.name + " identical across seeds");
    }
  }
  return Pass("augment " + std::to_string(a1.size()) + " bytes, eval sets " +
              std::to_string(e1.size()) + " bytes; byte-identical reruns, seed-sensitive");
}

Outcome RatioMix() {
  Rng rng(77);
  std::vector<Record> records;
  for (int i = 0; i < 10000; ++i) {
    records.push_back(MakeRecord(
        "r" + std::to_string(i), Task::kPairClassification,
        {{"part1", testing::RandomText(rng, 8, 20, testing::TextStyle::kPlain)},
         {"part2", testing::RandomText(rng, 8, 20, testing::TextStyle::kPlain)}},
        Label::Class(i % 3 == 0 ? "entailment" : i % 3 == 1 ? "neutral" : "contradiction")));
  }
  AugmentConfig config;
  config.master_seed = 3;
  const AugmentResult result = Augment(records, config);
  std::map<int, std::size_t> per_n;
  std::size_t invalid = 0;
  std::size_t valid = 0;
  for (const auto* part : {&result.train, &result.dev}) {
    for (const Record& r : *part) {
      if (r.gold.ToString() == "invalid") {
        ++invalid;
        if (r.provenance && r.provenance->n) ++per_n[*r.provenance->n];
      } else {
        ++valid;
      }
    }
  }
  std::ostringstream detail;
  detail << "valid=" << valid << " invalid=" << invalid << " per_n={";
  std::size_t lo = SIZE_MAX;
  std::size_t hi = 0;
  std::size_t sum = 0;
  for (int n : {1, 2, 3}) {
    detail << (n > 1 ? "," : "") << n << ":" << per_n[n];
    lo = std::min(lo, per_n[n]);
    hi = std::max(hi, per_n[n]);
    sum += per_n[n];
  }
  detail << "}";
  if (valid != 10000 || invalid != 10000 || sum != invalid || hi - lo > 1) {
    return Fail(detail.str());
  }
  return Pass(detail.str());
}

Outcome FilterReproduction() {
  struct Case {
    const char* env;
    DatasetFormat format;
    std::size_t original;
    std::size_t kept;
  };
  const Case cases[] = {
      {"WORDORDER_COLA_DEV", DatasetFormat::kGlueTsv, 1043, 967},
      {"WORDORDER_MNLI_DEV", DatasetFormat::kGlueTsv, 9815, 9289},
      {"WORDORDER_SWAG_DEV", DatasetFormat::kSwagCsv, 20006, 19352},
  };
  std::string detail;
  bool any = false;
  for (const Case& c : cases) {
    const char* path = std::getenv(c.env);
    if (path == nullptr || *path == '\0') {
      detail += std::string(c.env) + " unset; ";
      continue;
    }
    any = true;
    const std::vector<Record> records = ReadDataset(path, c.format);
    if (records.empty()) return Fail(std::string(c.env) + ": no records");
    const FilterResult result =
        FilterMinWords(records, 3, DefaultTargetComponents(records.front().task));
    const std::string got = std::to_string(result.stats.original_count) + "->" +
                            std::to_string(result.stats.used_count);
    const std::string want = std::to_string(c.original) + "->" + std::to_string(c.kept);
    if (got != want) return Fail(std::string(c.env) + ": " + got + ", expected " + want);
    detail += std::string(c.env) + " " + got + "; ";
  }
  if (!any) return Skip(detail + "no dataset files supplied");
  return Pass(detail);
}

// Independent answer normalization for ASCII text.
std::string NaiveNormalize(const std::string& s) {
  std::string cleaned;
  for (char c : s) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x80 && std::ispunct(u)) continue;
    cleaned.push_back(u < 0x80 ? static_cast<char>(std::tolower(u)) : c);
  }
  std::istringstream words(cleaned);
  std::string out;
  for (std::string w; words >> w;) {
    if (w == "a" || w == "an" || w == "the") continue;
    out += (out.empty() ? "" : " ") + w;
  }
  return out;
}

std::string Mangle(Rng& rng, const std::string& s) {
  std::string out;
  if (UniformBelow(rng, 3) == 0) out += "The ";
  for (char c : s) {
    const auto u = static_cast<unsigned char>(c);
    out.push_back(u < 0x80 && UniformBelow(rng, 2) ? static_cast<char>(std::toupper(u)) : c);
  }
  if (UniformBelow(rng, 3) == 0) out += ".";
  return out;
}

Outcome ScorerOracle() {
  const std::set<std::string> invalid_labels = {"invalid", "invalid_part1", "invalid_part2"};
  const Strings classes = {"entailment", "neutral", "contradiction", "invalid", "invalid_part1",
                           "invalid_part2"};
  for (int set = 0; set < 500; ++set) {
    Rng rng(DeriveSeed(99, {"scorer", std::to_string(set)}));
    const std::size_t size = 1 + UniformBelow(rng, 80);
    const bool qa = set % 2 == 1;
    const std::vector<Record> records = testing::RandomRecords(
        qa ? Task::kExtractiveQa : Task::kPairClassification, size, 1000 + set,
        testing::TextStyle::kPlain, false);
    std::vector<Prediction> preds;
    std::size_t hits = 0;
    std::size_t invalid = 0;
    for (const Record& r : records) {
      Prediction p;
      p.id = r.id;
      const std::uint64_t pick = UniformBelow(rng, 4);
      if (!qa) {
        p.predicted = pick == 0 ? r.gold : Label::Class(classes[UniformBelow(rng, classes.size())]);
        if (p.predicted.ToString() == r.gold.ToString()) ++hits;
      } else if (pick == 0) {
        p.predicted = Label::Class(*std::next(invalid_labels.begin(),
                                              static_cast<long>(UniformBelow(rng, 3))));
      } else if (pick == 1) {
        Strings spans = r.gold.spans();
        for (std::string& s : spans) s = Mangle(rng, s);
        std::reverse(spans.begin(), spans.end());
        p.predicted = Label::Spans(spans);
      } else if (pick == 2) {
        p.predicted = Label::Spans({testing::RandomText(rng, 1, 3, testing::TextStyle::kPlain)});
      } else {
        Strings spans = r.gold.spans();
        if (spans.size() > 1) spans.pop_back();
        else spans.push_back("extra");
        p.predicted = Label::Spans(spans);
      }
      if (invalid_labels.count(p.predicted.ToString()) &&
          p.predicted.kind() != Label::Kind::kAnswerSpans) {
        ++invalid;
      } else if (qa) {
        Strings want;
        Strings got;
        for (const auto& s : r.gold.spans()) want.push_back(NaiveNormalize(s));
        for (const auto& s : p.predicted.spans()) got.push_back(NaiveNormalize(s));
        std::sort(want.begin(), want.end());
        std::sort(got.begin(), got.end());
        if (want == got) ++hits;
      }
      preds.push_back(p);
    }
    // Shuffle prediction order; scoring aligns by id.
    Shuffle(std::span<Prediction>(preds), rng);
    ScoreContext context;
    context.dataset = "synthetic";
    const MetricsReport report = qa ? ScoreDropEm(records, preds, invalid_labels, context)
                                    : Score(records, preds, invalid_labels, context);
    const double expect_main = 100.0 * static_cast<double>(hits) / static_cast<double>(size);
    const double expect_invalid = 100.0 * static_cast<double>(invalid) / static_cast<double>(size);
    const MetricRow* main = report.Find("dev", qa ? "exact_match" : "accuracy");
    const MetricRow* pct = report.Find("dev", "pct_invalid");
    if (main == nullptr || pct == nullptr) return Fail("missing report rows");
    if (main->value != expect_main || pct->value != expect_invalid || main->count != size ||
        pct->count != size) {
      std::ostringstream s;
      s << "set " << set << ": got " << main->value << "/" << pct->value << " expected "
        << expect_main << "/" << expect_invalid;
      return Fail(s.str());
    }
  }

  std::vector<Record> hans;
  std::vector<Prediction> all_entailment;
  const char* heuristics[] = {"lexical_overlap", "subsequence", "constituent"};
  for (int i = 0; i < 300; ++i) {
    hans.push_back(MakeRecord(
        "h" + std::to_string(i), Task::kPairClassification,
        {{"part1", "the judge saw the actor ."}, {"part2", "the actor saw the judge ."}},
        Label::Class(i % 2 == 0 ? "entailment" : "non-entailment")));
    hans.back().tags["heuristic"] = heuristics[(i / 2) % 3];
    all_entailment.push_back({hans.back().id, Label::Class("entailment"), std::nullopt});
  }
  const HansTable table = ScoreHans(hans, all_entailment);
  for (int h = 0; h < 3; ++h) {
    if (table.accuracy[h][0] != 100.0 || table.accuracy[h][1] != 0.0 || table.count[h][0] != 50 ||
        table.count[h][1] != 50) {
      return Fail(std::string("HANS all-entailment cell wrong for ") + heuristics[h]);
    }
  }
  return Pass("500 prediction sets match the naive recount; HANS all-entailment reads 100/0");
}

Outcome ToyEndToEnd() {
  const std::vector<Record> train_all = testing::MarkerOrderRecords(5000, 1);
  const std::vector<Record> test = testing::MarkerOrderRecords(1000, 2);

  std::vector<std::size_t> order(train_all.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng split_rng(DeriveSeed(7, {"toy-split"}));
  Shuffle(std::span<std::size_t>(order), split_rng);
  std::vector<Record> train;
  std::vector<Record> dev;
  for (std::size_t k = 0; k < order.size(); ++k) {
    (k < 4500 ? train : dev).push_back(train_all[order[k]]);
  }
  toy::ModelConfig config;
  config.seed = 7;
  config.learning_rate = 3e-3;
  const toy::ToyModel base = toy::Train(config, train, dev, nullptr);
  const double base_dev = toy::Accuracy(base, dev);
  const double base_test = toy::Accuracy(base, test);

  AugmentConfig augment;
  augment.master_seed = 11;
  const AugmentResult fi_data = Augment(train_all, augment);
  const toy::ToyModel fi = toy::Train(config, fi_data.train, fi_data.dev, nullptr);

  const Strings components = {"part1"};
  const std::vector<int> n_set = {1, 2, 3};
  const std::vector<EvalSet> sets = BuildEvalSets(test, components, n_set, 5);
  const std::set<std::string> invalid = {"invalid"};
  std::ostringstream detail;
  detail.setf(std::ios::fixed);
  detail.precision(2);
  detail << "base dev=" << base_dev << " base well-ordered=" << base_test;
  double fi_well = 0.0;
  double fi_unigram_invalid = 0.0;
  for (const EvalSet& set : sets) {
    ScoreContext context;
    context.variant = set.variant;
    const MetricsReport report =
        Score(set.records, toy::Predict(fi, set.records), invalid, context);
    const double acc = report.Find(set.variant.name, "accuracy")->value;
    const double pct = report.Find(set.variant.name, "pct_invalid")->value;
    if (set.variant.name == "dev") {
      fi_well = acc;
      detail << " fi well-ordered=" << acc << " fi dev pct_invalid=" << pct;
    } else {
      detail << " " << set.variant.name << " pct_invalid=" << pct;
      if (set.variant.n == 1) fi_unigram_invalid = pct;
    }
  }
  const bool ok = base_dev >= 95.0 && fi_unigram_invalid >= 90.0 &&
                  std::abs(fi_well - base_test) <= 5.0;
  return ok ? Pass(detail.str()) : Fail(detail.str());
}

Outcome GradientCheck() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    toy::GradCheckConfig config;
    config.seed = seed;
    worst = std::max(worst, toy::GradCheck(config).max_relative_error);
  }
  toy::GradCheckConfig corrupted;
  corrupted.corrupt_gradient = [](toy::ModelParams& grad) {
    grad.word_emb[3 * grad.embed_dim] += 0.01;
  };
  const double broken = toy::GradCheck(corrupted).max_relative_error;
  std::ostringstream detail;
  detail << "max relative error " << worst << " over 10 seeds; corrupted fixture " << broken;
  return worst < 1e-4 && broken > 1e-2 ? Pass(detail.str()) : Fail(detail.str());
}

Outcome RoundTrip() {
  struct Case {
    Task task;
    DatasetFormat format;
    testing::TextStyle style;
    bool tags;
  };
  const Case cases[] = {
      {Task::kPairClassification, DatasetFormat::kJsonl, testing::TextStyle::kAnything, true},
      {Task::kSingleSentence, DatasetFormat::kJsonl, testing::TextStyle::kAnything, true},
      {Task::kMultipleChoice, DatasetFormat::kJsonl, testing::TextStyle::kAnything, true},
      {Task::kExtractiveQa, DatasetFormat::kJsonl, testing::TextStyle::kAnything, true},
      {Task::kPairClassification, DatasetFormat::kGlueTsv, testing::TextStyle::kTsvSafe, true},
      {Task::kSingleSentence, DatasetFormat::kGlueTsv, testing::TextStyle::kTsvSafe, false},
      {Task::kMultipleChoice, DatasetFormat::kSwagCsv, testing::TextStyle::kAnything, true},
  };
  std::size_t total = 0;
  for (const Case& c : cases) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const std::vector<Record> records = testing::RandomRecords(c.task, 50, seed, c.style, c.tags);
      const std::string written = SerializeDataset(records, c.format, c.task);
      const std::vector<Record> back = ParseDataset(written, c.format);
      if (back != records || SerializeDataset(back, c.format, c.task) != written) {
        return Fail(std::string(DatasetFormatName(c.format)) + " seed " + std::to_string(seed));
      }
      total += records.size();
    }
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::vector<Record> records = testing::RandomRecords(
        Task::kExtractiveQa, 50, seed, testing::TextStyle::kAnything, false);
    std::map<std::string, Record> expected;
    for (const Record& r : records) expected[r.id] = r;
    const std::vector<Record> back =
        ParseDataset(testing::ToDropJson(records), DatasetFormat::kDropJson);
    if (back.size() != records.size()) return Fail("drop_json record count");
    for (const Record& r : back) {
      if (!expected.count(r.id) || expected.at(r.id) != r) return Fail("drop_json record " + r.id);
    }
    const std::string jsonl = SerializeDataset(back, DatasetFormat::kJsonl);
    if (ParseDataset(jsonl, DatasetFormat::kJsonl) != back) {
      return Fail("drop_json -> jsonl seed " + std::to_string(seed));
    }
    total += records.size();
  }
  return Pass(std::to_string(total) + " records over jsonl, glue_tsv, swag_csv and drop_json");
}

struct Criterion {
  const char* name;
  double time_limit_s;  // 0 for none
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace wordorder

int main() {
  using namespace wordorder;
  const std::vector<Criterion> criteria = {
      {"permutation-properties", 5.0, PropertySuite},
      {"oracle-equivalence", 30.0, OracleEquivalence},
      {"determinism", 0.0, Determinism},
      {"ratio-mix", 0.0, RatioMix},
      {"filter-reproduction", 0.0, FilterReproduction},
      {"scorer-oracle", 0.0, ScorerOracle},
      {"toy-fi-end-to-end", 300.0, ToyEndToEnd},
      {"gradient-check", 0.0, GradientCheck},
      {"round-trip", 0.0, RoundTrip},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = Fail(std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (outcome.verdict != Verdict::kFail && c.time_limit_s > 0 && seconds >= c.time_limit_s) {
      outcome = Fail("took " + std::to_string(seconds) + " s, limit " +
                     std::to_string(c.time_limit_s) + " s; " + outcome.detail);
    }
    const char* tag = outcome.verdict == Verdict::kPass   ? "PASS"
                      : outcome.verdict == Verdict::kSkip ? "SKIP"
                                                          : "FAIL";
    if (outcome.verdict == Verdict::kFail) ++failures;
    std::printf("%s %s (%.2f s): %s\n", tag, c.name, seconds, outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
