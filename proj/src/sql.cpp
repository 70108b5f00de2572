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
#include "causaldb/sql.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include "causaldb/error.hpp"

namespace causaldb {

namespace {

constexpr std::array<std::string_view, 9> kKindNames = {"backbone", "hubs",    "mechanisms", "provenance", "scc",
                                                        "two_hop",  "mutual",  "do_cut",     "soft_do"};

constexpr std::string_view kEdgeColumns[] = {"edge_id",      "src_id",       "dst_id",       "rel_type",
                                             "polarity",     "support_lcms", "support_docs", "score_sum",
                                             "score_mean",   "score_max",    "pol_mass_inc", "pol_mass_dec",
                                             "pol_mass_unk", "controversy"};

/// Shortest round-trip decimal. Long mantissas go through a string cast so
/// engines that read bare literals as DECIMAL still land on the same double.
std::string double_literal(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  std::string text(buf.data(), ptr);
  std::size_t digits = 0;
  for (char c : text) {
    if (c == 'e' || c == 'E') break;
    if (c >= '0' && c <= '9') ++digits;
  }
  if (digits <= 15 && text.find_first_of("eE") == std::string::npos) return text;
  return "CAST('" + text + "' AS DOUBLE)";
}

bool is_view_query(QueryKind k) {
  return k == QueryKind::backbone || k == QueryKind::hubs || k == QueryKind::mechanisms ||
         k == QueryKind::two_hop || k == QueryKind::mutual;
}

/// Builds the WITH clause for the rewrites and returns the relation name the
/// final query reads edges from.
std::string rewrite_ctes(const std::vector<Intervention>& interventions, std::string& with) {
  std::vector<std::string> cuts;
  std::set<std::string> cut_set;
  std::vector<std::string> scaled_order;
  std::map<std::string, double> scale;
  for (const auto& iv : interventions) {
    if (iv.label.empty()) throw InvalidArgument("intervention label must not be empty");
    if (!iv.lambda) {
      if (cut_set.insert(iv.label).second) cuts.push_back(iv.label);
      continue;
    }
    if (!(*iv.lambda >= 0.0) || !std::isfinite(*iv.lambda)) throw InvalidArgument("soft lambda must be >= 0");
    auto [it, inserted] = scale.try_emplace(iv.label, *iv.lambda);
    if (inserted) {
      scaled_order.push_back(iv.label);
    } else {
      it->second *= *iv.lambda;
    }
  }

  std::string relation = "atlas_edges";
  std::vector<std::string> ctes;
  if (!cuts.empty()) {
    std::string cte = "intervened_edges AS (\n  SELECT e.*\n  FROM " + relation +
                      " e\n  JOIN atlas_nodes n1 ON e.src_id = n1.node_id\n  WHERE ";
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      if (i > 0) cte += "\n    AND ";
      cte += "n1.label_canon <> " + sql_quote(cuts[i]);
    }
    cte += "\n)";
    ctes.push_back(std::move(cte));
    relation = "intervened_edges";
  }
  if (!scaled_order.empty()) {
    std::string cte = "soft_do AS (\n  SELECT\n";
    for (std::size_t i = 0; i < std::size(kEdgeColumns); ++i) {
      cte += "    ";
      if (kEdgeColumns[i] == "score_sum") {
        cte += "CASE";
        for (const auto& label : scaled_order) {
          cte += " WHEN n1.label_canon = " + sql_quote(label) + " THEN " + double_literal(scale.at(label)) +
                 " * e.score_sum";
        }
        cte += " ELSE e.score_sum END AS score_sum";
      } else {
        cte += "e.";
        cte += kEdgeColumns[i];
      }
      cte += i + 1 < std::size(kEdgeColumns) ? ",\n" : "\n";
    }
    cte += "  FROM " + relation + " e\n  JOIN atlas_nodes n1 ON e.src_id = n1.node_id\n)";
    ctes.push_back(std::move(cte));
    relation = "soft_do";
  }

  if (!ctes.empty()) {
    with = "WITH ";
    for (std::size_t i = 0; i < ctes.size(); ++i) {
      if (i > 0) with += ",\n";
      with += ctes[i];
    }
    with += "\n";
  }
  return relation;
}

std::string limit_clause(std::size_t limit) {
  if (limit == 0) throw InvalidArgument("limit must be >= 1");
  return "LIMIT " + std::to_string(limit) + ";\n";
}

std::string view_query(QueryKind kind, const SqlRequest& req, const std::string& edges) {
  switch (kind) {
    case QueryKind::backbone:
      return "SELECT\n  e.edge_id,\n  e.rel_type,\n  n1.label_canon AS src,\n  n2.label_canon AS dst,\n"
             "  e.support_lcms,\n  e.score_sum\n"
             "FROM " + edges + " e\n"
             "JOIN atlas_nodes n1 ON e.src_id = n1.node_id\n"
             "JOIN atlas_nodes n2 ON e.dst_id = n2.node_id\n"
             "ORDER BY e.score_sum DESC, src ASC, dst ASC, e.rel_type ASC\n" +
             limit_clause(req.limit);
    case QueryKind::hubs:
      return "SELECT\n  n.label_canon AS src,\n  SUM(e.score_sum) AS out_mass,\n  COUNT(*) AS out_degree\n"
             "FROM " + edges + " e\n"
             "JOIN atlas_nodes n ON e.src_id = n.node_id\n"
             "GROUP BY n.node_id, n.label_canon\n"
             "ORDER BY out_mass DESC, src ASC\n" +
             limit_clause(req.limit);
    case QueryKind::mechanisms:
      if (req.src.empty()) throw InvalidArgument("mechanisms query needs a source label");
      return "SELECT\n  e.edge_id,\n  e.rel_type,\n  n2.label_canon AS dst,\n  e.support_lcms,\n  e.score_sum\n"
             "FROM " + edges + " e\n"
             "JOIN atlas_nodes n1 ON e.src_id = n1.node_id\n"
             "JOIN atlas_nodes n2 ON e.dst_id = n2.node_id\n"
             "WHERE n1.label_canon = " + sql_quote(req.src) + "\n"
             "ORDER BY e.score_sum DESC, dst ASC, e.rel_type ASC\n" +
             limit_clause(req.limit);
    case QueryKind::two_hop:
      return "SELECT\n  n1.label_canon AS a,\n  e1.rel_type AS r1,\n  n2.label_canon AS b,\n  e2.rel_type AS r2,\n"
             "  n3.label_canon AS c,\n  (e1.score_sum + e2.score_sum) AS path_score\n"
             "FROM " + edges + " e1\n"
             "JOIN " + edges + " e2 ON e1.dst_id = e2.src_id\n"
             "JOIN atlas_nodes n1 ON e1.src_id = n1.node_id\n"
             "JOIN atlas_nodes n2 ON e1.dst_id = n2.node_id\n"
             "JOIN atlas_nodes n3 ON e2.dst_id = n3.node_id\n"
             "ORDER BY path_score DESC, a ASC, b ASC, c ASC, r1 ASC, r2 ASC\n" +
             limit_clause(req.limit);
    case QueryKind::mutual:
      return "SELECT\n  n1.label_canon AS a,\n  e1.rel_type AS r1,\n  n2.label_canon AS b,\n  e2.rel_type AS r2\n"
             "FROM " + edges + " e1\n"
             "JOIN " + edges + " e2\n"
             "  ON e1.src_id = e2.dst_id\n"
             " AND e1.dst_id = e2.src_id\n"
             "JOIN atlas_nodes n1 ON e1.src_id = n1.node_id\n"
             "JOIN atlas_nodes n2 ON e1.dst_id = n2.node_id\n"
             "WHERE n1.label_canon < n2.label_canon\n"
             "ORDER BY a ASC, b ASC, r1 ASC, r2 ASC;\n";
    default:
      throw InvalidArgument("query kind '" + std::string(to_string(kind)) + "' cannot run over an edge view");
  }
}

}  // namespace

std::string_view to_string(QueryKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::optional<QueryKind> parse_query_kind(std::string_view name) {
  std::string normalized(name);
  for (char& c : normalized) {
    if (c == '-') c = '_';
  }
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == normalized) return static_cast<QueryKind>(i);
  }
  return std::nullopt;
}

std::string sql_quote(std::string_view text) {
  std::string out = "'";
  for (char c : text) {
    if (c == '\'') out += '\'';
    out += c;
  }
  out += '\'';
  return out;
}

std::string emit_sql(const SqlRequest& req) {
  switch (req.kind) {
    case QueryKind::provenance:
      if (!req.interventions.empty()) throw InvalidArgument("provenance does not take interventions");
      return "SELECT\n  s.edge_id,\n  s.doc_id,\n  s.atlas_id,\n  s.lcm_instance_id,\n  s.score,\n  s.score_raw,\n"
             "  s.coupling,\n  s.weight,\n  s.polarity\n"
             "FROM atlas_edge_support s\n"
             "WHERE s.edge_id = " + std::to_string(req.edge_id) + "\n"
             "ORDER BY s.doc_id ASC, s.lcm_instance_id ASC;\n";
    case QueryKind::scc:
      if (!req.interventions.empty()) throw InvalidArgument("scc does not take interventions");
      return "SELECT\n  scc_id,\n  n_nodes,\n  n_edges,\n  support_docs,\n  top_nodes\n"
             "FROM atlas_scc\n"
             "ORDER BY n_nodes DESC, scc_id ASC\n" +
             limit_clause(req.limit);
    case QueryKind::do_cut:
    case QueryKind::soft_do: {
      if (req.interventions.empty()) throw InvalidArgument("intervention query needs at least one intervention");
      if (!is_view_query(req.then)) {
        throw InvalidArgument("cannot run '" + std::string(to_string(req.then)) + "' over an intervened view");
      }
      std::string with;
      const std::string edges = rewrite_ctes(req.interventions, with);
      return with + view_query(req.then, req, edges);
    }
    default: {
      std::string with;
      const std::string edges = rewrite_ctes(req.interventions, with);
      return with + view_query(req.kind, req, edges);
    }
  }
}

}  // namespace causaldb
