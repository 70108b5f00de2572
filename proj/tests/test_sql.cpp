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
#include <doctest.h>

#include "causaldb/error.hpp"
#include "causaldb/sql.hpp"

using namespace causaldb;

namespace {

bool contains(const std::string& haystack, std::string_view needle) {
  return haystack.find(needle) != std::string::npos;
}

SqlRequest request(QueryKind kind) {
  SqlRequest r;
  r.kind = kind;
  return r;
}

}  // namespace

TEST_CASE("query kind names") {
  for (auto k : {QueryKind::backbone, QueryKind::hubs, QueryKind::mechanisms, QueryKind::provenance, QueryKind::scc,
                 QueryKind::two_hop, QueryKind::mutual, QueryKind::do_cut, QueryKind::soft_do}) {
    CHECK(parse_query_kind(to_string(k)) == k);
  }
  CHECK(parse_query_kind("two-hop") == QueryKind::two_hop);
  CHECK(parse_query_kind("do-cut") == QueryKind::do_cut);
  CHECK_FALSE(parse_query_kind("Backbone").has_value());
}

TEST_CASE("sql_quote doubles single quotes") {
  CHECK(sql_quote("plain") == "'plain'");
  CHECK(sql_quote("it's") == "'it''s'");
  CHECK(sql_quote("''") == "''''''");
  CHECK(sql_quote("") == "''");
}

TEST_CASE("backbone sql") {
  auto r = request(QueryKind::backbone);
  r.limit = 8;
  const std::string sql = emit_sql(r);
  CHECK(contains(sql, "FROM atlas_edges e"));
  CHECK(contains(sql, "ORDER BY e.score_sum DESC, src ASC, dst ASC, e.rel_type ASC"));
  CHECK(contains(sql, "LIMIT 8;"));
  CHECK_FALSE(contains(sql, "WITH"));
}

TEST_CASE("per-kind sql shapes") {
  CHECK(contains(emit_sql(request(QueryKind::hubs)), "GROUP BY n.node_id, n.label_canon"));
  CHECK(contains(emit_sql(request(QueryKind::two_hop)), "JOIN atlas_edges e2 ON e1.dst_id = e2.src_id"));
  const std::string mutual = emit_sql(request(QueryKind::mutual));
  CHECK(contains(mutual, "WHERE n1.label_canon < n2.label_canon"));
  CHECK_FALSE(contains(mutual, "LIMIT"));
  CHECK(contains(emit_sql(request(QueryKind::scc)), "FROM atlas_scc"));

  auto prov = request(QueryKind::provenance);
  prov.edge_id = 18446744073709551615ULL;
  CHECK(contains(emit_sql(prov), "WHERE s.edge_id = 18446744073709551615"));

  auto mech = request(QueryKind::mechanisms);
  mech.src = "farmer's income";
  CHECK(contains(emit_sql(mech), "WHERE n1.label_canon = 'farmer''s income'"));
  mech.src.clear();
  CHECK_THROWS_AS(emit_sql(mech), InvalidArgument);
}

TEST_CASE("do-cut rewrites the edge relation") {
  auto r = request(QueryKind::do_cut);
  r.interventions = {{"bipedalism", std::nullopt}, {"o'brien", std::nullopt}, {"bipedalism", std::nullopt}};
  const std::string sql = emit_sql(r);
  CHECK(sql.rfind("WITH intervened_edges AS (", 0) == 0);
  CHECK(contains(sql, "n1.label_canon <> 'bipedalism'\n    AND n1.label_canon <> 'o''brien'\n)"));
  CHECK(contains(sql, "FROM intervened_edges e"));
  CHECK(sql.find("'bipedalism'") == sql.rfind("'bipedalism'"));
}

TEST_CASE("soft interventions compose per label") {
  auto r = request(QueryKind::soft_do);
  r.then = QueryKind::hubs;
  r.interventions = {{"a", 0.5}, {"b", 3.0}, {"a", 0.5}};
  const std::string sql = emit_sql(r);
  CHECK(contains(sql, "WHEN n1.label_canon = 'a' THEN 0.25 * e.score_sum"));
  CHECK(contains(sql, "WHEN n1.label_canon = 'b' THEN 3 * e.score_sum"));
  CHECK(contains(sql, "ELSE e.score_sum END AS score_sum"));
  CHECK(contains(sql, "FROM soft_do e"));
  CHECK(contains(sql, "e.controversy\n"));
}

TEST_CASE("long lambdas are emitted as exact string casts") {
  auto r = request(QueryKind::soft_do);
  r.interventions = {{"a", 0.1 + 0.2}, {"b", 1e-30}};
  const std::string sql = emit_sql(r);
  CHECK(contains(sql, "CAST('0.30000000000000004' AS DOUBLE)"));
  CHECK(contains(sql, "CAST('1e-30' AS DOUBLE)"));
}

TEST_CASE("cut and soft chain in one query") {
  auto r = request(QueryKind::do_cut);
  r.interventions = {{"a", std::nullopt}, {"b", 2.0}};
  r.then = QueryKind::two_hop;
  const std::string sql = emit_sql(r);
  CHECK(contains(sql, "intervened_edges AS ("));
  CHECK(contains(sql, "soft_do AS ("));
  CHECK(contains(sql, "FROM intervened_edges e\n  JOIN atlas_nodes n1"));
  CHECK(contains(sql, "FROM soft_do e1"));
}

TEST_CASE("inconsistent requests are rejected") {
  auto r = request(QueryKind::do_cut);
  CHECK_THROWS_AS(emit_sql(r), InvalidArgument);
  r.interventions = {{"a", std::nullopt}};
  r.then = QueryKind::scc;
  CHECK_THROWS_AS(emit_sql(r), InvalidArgument);
  r.then = QueryKind::backbone;
  r.limit = 0;
  CHECK_THROWS_AS(emit_sql(r), InvalidArgument);
  auto soft = request(QueryKind::soft_do);
  soft.interventions = {{"a", -1.0}};
  CHECK_THROWS_AS(emit_sql(soft), InvalidArgument);
  soft.interventions = {{"", 1.0}};
  CHECK_THROWS_AS(emit_sql(soft), InvalidArgument);
  auto prov = request(QueryKind::provenance);
  prov.interventions = {{"a", std::nullopt}};
  CHECK_THROWS_AS(emit_sql(prov), InvalidArgument);
}
