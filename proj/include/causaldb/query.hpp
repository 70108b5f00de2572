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
#include <string>
#include <string_view>
#include <vector>

#include "causaldb/atlas.hpp"
#include "causaldb/view.hpp"

namespace causaldb {

// Every ranking orders by effective score descending, then labels ascending,
// then relation name ascending.

struct EdgeResultRow {
  EdgeId edge_id;
  RelType rel_type = RelType::INFLUENCES;
  std::string src;
  std::string dst;
  std::int64_t support_lcms = 0;
  double score_sum = 0;  // effective score under the view
};

struct PathRow {
  std::string a, b, c;
  RelType r1 = RelType::INFLUENCES;
  RelType r2 = RelType::INFLUENCES;
  double path_score = 0;
};

struct MutualRow {
  std::string a;
  RelType r1 = RelType::INFLUENCES;
  std::string b;
  RelType r2 = RelType::INFLUENCES;
};

struct RankChange {
  EdgeId edge_id;
  std::size_t old_rank = 0;  // 1-based
  std::size_t new_rank = 0;
};

struct CounterfactualDiff {
  std::vector<EdgeResultRow> vanished;  // in baseline order
  std::vector<RankChange> rank_changes;
};

std::vector<EdgeResultRow> backbone(const EdgeView& view, std::size_t limit);

/// Outgoing edges of one concept. Throws NotFound for unknown labels.
std::vector<EdgeResultRow> mechanisms(const EdgeView& view, std::string_view src_label, std::size_t limit);

/// Support rows of an edge ordered by (doc_id, lcm_instance_id). Throws NotFound.
std::vector<SupportRow> provenance(const Atlas& atlas, EdgeId edge);

/// All joins a->b->c over visible edges, a == c included.
std::vector<PathRow> two_hop_paths(const EdgeView& view, std::size_t limit);

/// 2-cycles, reported once per (r1, r2) with a < b.
std::vector<MutualRow> mutual_influence(const EdgeView& view);

/// Hard intervention: hides every outgoing edge of the concept. Throws
/// NotFound when the label is not in the atlas.
EdgeView do_cut(const EdgeView& view, std::string_view label);

/// Soft intervention: multiplies the effective score of the concept's
/// outgoing edges by lambda (>= 0). Repeated calls compose multiplicatively.
EdgeView soft_do(const EdgeView& view, std::string_view label, double lambda);

/// Compares two rankings by edge id.
CounterfactualDiff counterfactual_diff(const std::vector<EdgeResultRow>& base,
                                       const std::vector<EdgeResultRow>& intervened);

}  // namespace causaldb
