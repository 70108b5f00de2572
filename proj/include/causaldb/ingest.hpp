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
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "causaldb/error.hpp"

namespace causaldb {

struct RawEdge {
  std::string src;
  std::string rel;
  std::string dst;
  friend bool operator==(const RawEdge&, const RawEdge&) = default;
};

/// One local causal model as read from disk. Score fields stay absent when
/// the artifact does not carry them; weight defaults are the builder's call.
struct Lcm {
  std::string doc_id;
  std::string lcm_instance_id;
  std::string focus;
  std::vector<RawEdge> edges;
  std::optional<double> score;
  std::optional<double> score_raw;
  std::optional<double> coupling;
  std::optional<std::int64_t> radius;
  std::optional<std::int64_t> model_size;
  friend bool operator==(const Lcm&, const Lcm&) = default;
};

struct ScoreRow {
  std::string lcm_instance_id;
  std::optional<double> score;
  std::optional<double> score_raw;
  std::optional<double> coupling;
};

struct ClaimRow {
  std::string cause;
  std::string effect;
  std::optional<std::string> sign;
  std::optional<std::string> method;
  std::string doc_id;
  std::optional<std::int64_t> year;
};

struct DocumentRun {
  std::string doc_id;
  std::vector<std::filesystem::path> lcm_paths;
  std::optional<std::filesystem::path> scores_path;
};

/// True for `*.lcm.json` and `lcm_*.json`.
bool is_lcm_filename(std::string_view name);

/// One run per immediate subdirectory holding LCM files, sorted by doc_id.
/// Throws IoError when the root is missing.
std::vector<DocumentRun> scan_runs_root(const std::filesystem::path& root, Diagnostics& diag);

/// Throws FormatError on malformed JSON. `fallback_instance_id` is used when
/// the document has no lcm_instance_id.
Lcm parse_lcm(std::string_view bytes, std::string_view doc_id, Diagnostics& diag,
              std::string_view fallback_instance_id = {});

std::vector<ScoreRow> parse_scores_csv(std::string_view bytes, Diagnostics& diag);

/// Scores for matching lcm_instance_ids overwrite the LCM's fields cell by cell.
std::vector<Lcm> attach_scores(std::vector<Lcm> lcms, const std::vector<ScoreRow>& scores,
                               Diagnostics& diag);

/// Header must carry cause, effect and doc_id; sign, method and year are optional.
std::vector<ClaimRow> parse_claims_csv(std::string_view bytes, Diagnostics& diag);

/// Parses every LCM file of the run and attaches its scores.csv. Files that
/// fail to parse are skipped and counted in `diag.failed_files`.
std::vector<Lcm> load_document_run(const DocumentRun& run, Diagnostics& diag);

std::vector<Lcm> load_runs(const std::vector<DocumentRun>& runs, Diagnostics& diag);

std::string read_file(const std::filesystem::path& path);

}  // namespace causaldb
