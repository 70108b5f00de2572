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

#include <string>
#include <utility>
#include <vector>

#include "causaldb/atlas.hpp"

namespace causaldb {

struct MergeOptions {
  bool prefix_doc_ids = true;  // rewrite doc_id as "<atlas_id>::<doc_id>"
  double epsilon = 1e-9;
  std::string atlas_id = "merged";
};

/// Rewrites doc_id as atlas_id + "::" + doc_id. Throws InvalidArgument on an
/// empty atlas_id.
std::vector<SupportRow> disambiguate_doc_ids(std::vector<SupportRow> rows, const std::string& atlas_id);

/// Unions support rows and re-aggregates every edge from them. Rows are folded
/// in (edge_id, atlas_id, doc_id, lcm_instance_id) order. Nodes are rebuilt
/// from the ids referenced by merged edges; the first input wins the label and
/// examples are unioned up to 3. SCCs are recomputed.
///
/// A row keeps its recorded atlas_id; rows without one take the input's id.
/// Throws InvalidArgument on an empty list or repeated atlas ids, and
/// IntegrityError when one edge_id names different triples across inputs.
Atlas merge_atlases(const std::vector<std::pair<std::string, Atlas>>& atlases, const MergeOptions& opts = {});

}  // namespace causaldb
