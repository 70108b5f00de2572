/*
 * Copyright (c) 2026 The causaldb Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "causaldb/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "causaldb/csv.hpp"

namespace causaldb {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kSrcKeys[] = {"src", "source", "cause", "from", "head"};
constexpr std::string_view kDstKeys[] = {"dst", "target", "effect", "to", "tail"};
constexpr std::string_view kRelKeys[] = {"rel", "relation", "predicate", "label"};
constexpr std::string_view kInstanceKeys[] = {"lcm_instance_id", "lcm_id", "instance_id"};

template <std::size_t N>
const json* find_alias(const json& obj, const std::string_view (&keys)[N]) {
  for (auto key : keys) {
    auto it = obj.find(std::string(key));
    if (it != obj.end() && !it->is_null()) return &*it;
  }
  return nullptr;
}

std::optional<std::string> string_field(const json* v) {
  if (v == nullptr || !v->is_string()) return std::nullopt;
  return v->get<std::string>();
}

std::optional<double> score_field(const json& obj, const char* key, std::string_view where,
                                  Diagnostics& diag, bool non_negative) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) {
    diag.warn(std::string(where) + ": field '" + key + "' is not a number; ignored");
    return std::nullopt;
  }
  const double v = it->get<double>();
  if (non_negative && !(v >= 0.0)) {
    diag.warn(std::string(where) + ": field '" + key + "' is negative; ignored");
    return std::nullopt;
  }
  return v;
}

std::optional<std::int64_t> int_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer()) return std::nullopt;
  return it->get<std::int64_t>();
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<double> parse_double_cell(const csv::Field& f, std::string_view what, Diagnostics& diag) {
  const std::string v = trim(f.value);
  if (v.empty()) return std::nullopt;
  double out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    diag.warn("unparseable " + std::string(what) + " value '" + v + "'; treated as absent");
    return std::nullopt;
  }
  return out;
}

std::map<std::string, std::size_t> header_index(const csv::Record& header) {
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < header.size(); ++i) idx.emplace(trim(header[i].value), i);
  return idx;
}

const csv::Field* cell(const csv::Record& row, std::optional<std::size_t> col) {
  if (!col || *col >= row.size()) return nullptr;
  return &row[*col];
}

}  // namespace

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

bool is_lcm_filename(std::string_view name) {
  constexpr std::string_view kSuffix = ".lcm.json";
  if (name.size() > kSuffix.size() && name.ends_with(kSuffix)) return true;
  return name.size() > 9 && name.starts_with("lcm_") && name.ends_with(".json");
}

std::vector<DocumentRun> scan_runs_root(const fs::path& root, Diagnostics& diag) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw IoError("runs root is not a readable directory: " + root.string());

  std::vector<DocumentRun> runs;
  fs::directory_iterator it(root, ec);
  if (ec) throw IoError("cannot list " + root.string() + ": " + ec.message());
  for (const auto& entry : it) {
    if (!entry.is_directory()) continue;
    DocumentRun run;
    run.doc_id = entry.path().filename().string();
    for (const auto& f : fs::directory_iterator(entry.path())) {
      if (!f.is_regular_file()) continue;
      const std::string name = f.path().filename().string();
      if (is_lcm_filename(name)) {
        run.lcm_paths.push_back(f.path());
      } else if (name == "scores.csv") {
        run.scores_path = f.path();
      }
    }
    if (run.lcm_paths.empty()) {
      diag.warn("document folder '" + run.doc_id + "' has no LCM files; skipped");
      continue;
    }
    std::sort(run.lcm_paths.begin(), run.lcm_paths.end());
    runs.push_back(std::move(run));
  }
  std::sort(runs.begin(), runs.end(),
            [](const DocumentRun& a, const DocumentRun& b) { return a.doc_id < b.doc_id; });
  return runs;
}

Lcm parse_lcm(std::string_view bytes, std::string_view doc_id, Diagnostics& diag,
              std::string_view fallback_instance_id) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw FormatError("malformed LCM JSON: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw FormatError("LCM JSON root must be an object");

  Lcm lcm;
  if (!doc_id.empty()) {
    lcm.doc_id = std::string(doc_id);
  } else if (auto it = doc.find("doc_id"); it != doc.end() && it->is_string()) {
    lcm.doc_id = it->get<std::string>();
  }
  if (auto id = string_field(find_alias(doc, kInstanceKeys))) {
    lcm.lcm_instance_id = *id;
  } else {
    lcm.lcm_instance_id = std::string(fallback_instance_id);
  }
  if (lcm.lcm_instance_id.empty()) throw FormatError("LCM has no lcm_instance_id");
  const std::string where = lcm.doc_id + "/" + lcm.lcm_instance_id;

  if (auto focus = doc.find("focus"); focus != doc.end() && focus->is_string()) {
    lcm.focus = focus->get<std::string>();
  }
  lcm.score = score_field(doc, "score", where, diag, true);
  lcm.score_raw = score_field(doc, "score_raw", where, diag, true);
  lcm.coupling = score_field(doc, "coupling", where, diag, false);
  lcm.radius = int_field(doc, "radius");
  lcm.model_size = int_field(doc, "model_size");

  auto edges = doc.find("edges");
  if (edges == doc.end() || edges->is_null()) return lcm;
  if (!edges->is_array()) throw FormatError(where + ": 'edges' must be an array");

  std::size_t ordinal = 0;
  for (const auto& e : *edges) {
    ++ordinal;
    if (!e.is_object()) {
      diag.warn(where + ": edge #" + std::to_string(ordinal) + " is not an object; dropped");
      continue;
    }
    auto src = string_field(find_alias(e, kSrcKeys));
    auto dst = string_field(find_alias(e, kDstKeys));
    if (!src || src->empty() || !dst || dst->empty()) {
      diag.warn(where + ": edge #" + std::to_string(ordinal) + " lacks src or dst; dropped");
      continue;
    }
    RawEdge raw{std::move(*src), string_field(find_alias(e, kRelKeys)).value_or(""), std::move(*dst)};
    lcm.edges.push_back(std::move(raw));
  }
  return lcm;
}

std::vector<ScoreRow> parse_scores_csv(std::string_view bytes, Diagnostics& diag) {
  const auto records = csv::parse(bytes);
  std::vector<ScoreRow> rows;
  if (records.empty()) return rows;
  const auto idx = header_index(records.front());
  const auto col = [&idx](const char* name) -> std::optional<std::size_t> {
    auto it = idx.find(name);
    return it == idx.end() ? std::nullopt : std::optional<std::size_t>(it->second);
  };
  const auto id_col = col("lcm_instance_id");
  if (!id_col) throw FormatError("scores.csv: missing lcm_instance_id column");
  const auto score_col = col("score");
  const auto raw_col = col("score_raw");
  const auto coupling_col = col("coupling");

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const auto* id = cell(rec, id_col);
    if (id == nullptr || trim(id->value).empty()) {
      diag.warn("scores.csv row " + std::to_string(r) + ": empty lcm_instance_id; skipped");
      continue;
    }
    ScoreRow row;
    row.lcm_instance_id = trim(id->value);
    if (const auto* f = cell(rec, score_col)) row.score = parse_double_cell(*f, "score", diag);
    if (const auto* f = cell(rec, raw_col)) row.score_raw = parse_double_cell(*f, "score_raw", diag);
    if (const auto* f = cell(rec, coupling_col)) row.coupling = parse_double_cell(*f, "coupling", diag);
    for (auto* s : {&row.score, &row.score_raw}) {
      if (*s && !(**s >= 0.0)) {
        diag.warn("scores.csv row " + std::to_string(r) + ": negative score; treated as absent");
        s->reset();
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Lcm> attach_scores(std::vector<Lcm> lcms, const std::vector<ScoreRow>& scores,
                               Diagnostics& diag) {
  std::unordered_map<std::string, const ScoreRow*> by_id;
  for (const auto& row : scores) {
    auto [it, inserted] = by_id.try_emplace(row.lcm_instance_id, &row);
    if (!inserted) {
      diag.warn("scores: duplicate lcm_instance_id '" + row.lcm_instance_id + "'; last row wins");
      it->second = &row;
    }
  }
  std::unordered_map<std::string, bool> used;
  for (auto& lcm : lcms) {
    auto it = by_id.find(lcm.lcm_instance_id);
    if (it == by_id.end()) continue;
    used[it->first] = true;
    const ScoreRow& row = *it->second;
    if (row.score) lcm.score = row.score;
    if (row.score_raw) lcm.score_raw = row.score_raw;
    if (row.coupling) lcm.coupling = row.coupling;
  }
  // Report unmatched ids in file order so warnings are deterministic.
  std::unordered_map<std::string, bool> reported;
  for (const auto& row : scores) {
    if (used.count(row.lcm_instance_id) || reported.count(row.lcm_instance_id)) continue;
    reported[row.lcm_instance_id] = true;
    diag.warn("scores: no LCM with lcm_instance_id '" + row.lcm_instance_id + "'");
  }
  return lcms;
}

std::vector<ClaimRow> parse_claims_csv(std::string_view bytes, Diagnostics& diag) {
  const auto records = csv::parse(bytes);
  if (records.empty()) throw FormatError("claims csv: missing header row");
  const auto idx = header_index(records.front());
  const auto col = [&idx](const char* name) -> std::optional<std::size_t> {
    auto it = idx.find(name);
    return it == idx.end() ? std::nullopt : std::optional<std::size_t>(it->second);
  };
  const auto cause_col = col("cause");
  const auto effect_col = col("effect");
  const auto doc_col = col("doc_id");
  std::string missing;
  if (!cause_col) missing += " cause";
  if (!effect_col) missing += " effect";
  if (!doc_col) missing += " doc_id";
  if (!missing.empty()) throw FormatError("claims csv: missing mandatory column(s):" + missing);
  const auto sign_col = col("sign");
  const auto method_col = col("method");
  const auto year_col = col("year");

  std::vector<ClaimRow> claims;
  claims.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const auto* cause = cell(rec, cause_col);
    const auto* effect = cell(rec, effect_col);
    const auto* doc = cell(rec, doc_col);
    if (cause == nullptr || cause->value.empty() || effect == nullptr || effect->value.empty()) {
      diag.warn("claims csv row " + std::to_string(r) + ": empty cause or effect; dropped");
      continue;
    }
    if (doc == nullptr || doc->value.empty()) {
      diag.warn("claims csv row " + std::to_string(r) + ": empty doc_id; dropped");
      continue;
    }
    ClaimRow claim;
    claim.cause = cause->value;
    claim.effect = effect->value;
    claim.doc_id = doc->value;
    if (const auto* f = cell(rec, sign_col); f && !f->value.empty()) claim.sign = f->value;
    if (const auto* f = cell(rec, method_col); f && !f->value.empty()) claim.method = f->value;
    if (const auto* f = cell(rec, year_col)) {
      const std::string v = trim(f->value);
      std::int64_t year = 0;
      const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), year);
      if (!v.empty() && ec == std::errc{} && ptr == v.data() + v.size()) {
        claim.year = year;
      } else if (!v.empty()) {
        diag.warn("claims csv row " + std::to_string(r) + ": unparseable year '" + v + "'");
      }
    }
    claims.push_back(std::move(claim));
  }
  return claims;
}

std::vector<Lcm> load_document_run(const DocumentRun& run, Diagnostics& diag) {
  std::vector<Lcm> lcms;
  lcms.reserve(run.lcm_paths.size());
  for (const auto& path : run.lcm_paths) {
    std::string stem = path.filename().string();
    stem = stem.substr(0, stem.find('.'));
    try {
      lcms.push_back(parse_lcm(read_file(path), run.doc_id, diag, stem));
    } catch (const FormatError& e) {
      ++diag.failed_files;
      diag.warn(path.string() + ": " + e.what() + "; file skipped");
    }
  }
  if (run.scores_path) {
    lcms = attach_scores(std::move(lcms), parse_scores_csv(read_file(*run.scores_path), diag), diag);
  }
  std::map<std::string, int> seen;
  for (const auto& lcm : lcms) {
    if (++seen[lcm.lcm_instance_id] == 2) {
      diag.warn("document '" + run.doc_id + "': duplicate lcm_instance_id '" + lcm.lcm_instance_id + "'");
    }
  }
  return lcms;
}

std::vector<Lcm> load_runs(const std::vector<DocumentRun>& runs, Diagnostics& diag) {
  std::vector<Lcm> all;
  for (const auto& run : runs) {
    auto lcms = load_document_run(run, diag);
    std::move(lcms.begin(), lcms.end(), std::back_inserter(all));
  }
  return all;
}

}  // namespace causaldb
