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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace causaldb {

enum class QueryKind { backbone, hubs, mechanisms, provenance, scc, two_hop, mutual, do_cut, soft_do };

std::string_view to_string(QueryKind kind);
/// Accepts the names above; '-' is read as '_'. Returns nullopt otherwise.
std::optional<QueryKind> parse_query_kind(std::string_view name);

struct Intervention {
  std::string label;
  std::optional<double> lambda;  // absent: do-cut, present: soft
};

struct SqlRequest {
  QueryKind kind = QueryKind::backbone;
  std::size_t limit = 20;
  std::string src;                 // mechanisms
  std::uint64_t edge_id = 0;       // provenance
  std::vector<Intervention> interventions;
  QueryKind then = QueryKind::backbone;  // query run over the intervened view
};

/// Doubles embedded single quotes.
std::string sql_quote(std::string_view text);

/// Standard SQL over atlas_nodes / atlas_edges / atlas_edge_support /
/// atlas_scc. The ORDER BY clauses reproduce the native tie-breaking, so an
/// external engine returns rows in the same order as the native operators.
///
/// kind do_cut / soft_do use request.interventions (which must be non-empty)
/// and run request.then over the rewritten edge relation; any other kind
/// also honours a non-empty interventions list. Throws InvalidArgument when
/// the request is inconsistent.
std::string emit_sql(const SqlRequest& request);

}  // namespace causaldb
