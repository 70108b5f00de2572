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

#include <fstream>

#include "causaldb/error.hpp"
#include "causaldb/ingest.hpp"
#include "test_support.hpp"

using namespace causaldb;

namespace {

void write(const std::filesystem::path& p, std::string_view text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  f << text;
}

}  // namespace

TEST_CASE("lcm file name patterns") {
  CHECK(is_lcm_filename("lcm_0001.json"));
  CHECK(is_lcm_filename("model.lcm.json"));
  CHECK_FALSE(is_lcm_filename("lcm_.json"));
  CHECK_FALSE(is_lcm_filename(".lcm.json"));
  CHECK_FALSE(is_lcm_filename("scores.csv"));
  CHECK_FALSE(is_lcm_filename("lcm_0001.json.bak"));
  CHECK_FALSE(is_lcm_filename("README.txt"));
}

TEST_CASE("parse_lcm reads scores, edges and key aliases") {
  Diagnostics diag;
  const auto lcm = parse_lcm(R"({
    "lcm_instance_id": "m1", "focus": "walking", "score": 0.5, "score_raw": 3, "coupling": -0.2,
    "radius": 2, "model_size": 7,
    "edges": [
      {"src": "A", "rel": "causes", "dst": "B"},
      {"source": "B", "relation": "reduces", "target": "C"},
      {"cause": "C", "effect": "D"},
      {"head": "D", "predicate": "raises", "tail": "E"},
      {"src": "", "dst": "E"},
      7
    ]})",
                             "doc1", diag);
  CHECK(lcm.doc_id == "doc1");
  CHECK(lcm.lcm_instance_id == "m1");
  CHECK(lcm.focus == "walking");
  CHECK(lcm.score == 0.5);
  CHECK(lcm.score_raw == 3.0);
  CHECK(lcm.coupling == -0.2);
  CHECK(lcm.radius == 2);
  CHECK(lcm.model_size == 7);
  REQUIRE(lcm.edges.size() == 4);
  CHECK(lcm.edges[1] == RawEdge{"B", "reduces", "C"});
  CHECK(lcm.edges[2] == RawEdge{"C", "", "D"});
  CHECK(lcm.edges[3] == RawEdge{"D", "raises", "E"});
  CHECK(diag.warnings.size() == 2);
}

TEST_CASE("parse_lcm falls back to the file stem and rejects bad documents") {
  Diagnostics diag;
  CHECK(parse_lcm(R"({"edges": []})", "d", diag, "lcm_0007").lcm_instance_id == "lcm_0007");
  CHECK_THROWS_AS(parse_lcm(R"({"edges": []})", "d", diag), FormatError);
  CHECK_THROWS_AS(parse_lcm("{not json", "d", diag, "x"), FormatError);
  CHECK_THROWS_AS(parse_lcm("[1,2]", "d", diag, "x"), FormatError);
  CHECK_THROWS_AS(parse_lcm(R"({"edges": {}})", "d", diag, "x"), FormatError);
}

TEST_CASE("negative or non-numeric scores are ignored with a warning") {
  Diagnostics diag;
  const auto lcm = parse_lcm(R"({"lcm_id": "a", "score": -1, "score_raw": "high"})", "d", diag);
  CHECK_FALSE(lcm.score.has_value());
  CHECK_FALSE(lcm.score_raw.has_value());
  CHECK(diag.warnings.size() == 2);
}

TEST_CASE("scores csv overrides cell by cell") {
  Diagnostics diag;
  const auto rows = parse_scores_csv("lcm_instance_id,score,score_raw,coupling\r\n"
                                     "a,0.25,,0.1\n"
                                     "b,,4,\n"
                                     "zzz,1,1,1\n"
                                     ",1,1,1\n"
                                     "c,bad,-2,\n",
                                     diag);
  REQUIRE(rows.size() == 4);
  std::vector<Lcm> lcms = {testing::make_lcm("d", "a", {}, 0.9), testing::make_lcm("d", "b", {}, 0.9),
                           testing::make_lcm("d", "c", {})};
  lcms[1].score_raw = 1.0;
  const auto out = attach_scores(lcms, rows, diag);
  CHECK(out[0].score == 0.25);
  CHECK(out[0].coupling == 0.1);
  CHECK(out[1].score == 0.9);
  CHECK(out[1].score_raw == 4.0);
  CHECK_FALSE(out[2].score.has_value());
  CHECK_FALSE(out[2].score_raw.has_value());
  bool unmatched = false;
  for (const auto& w : diag.warnings) unmatched |= w.find("zzz") != std::string::npos;
  CHECK(unmatched);
  CHECK_THROWS_AS(parse_scores_csv("id,score\nx,1\n", diag), FormatError);
}

TEST_CASE("scan_runs_root finds documents and skips stray files") {
  testing::TempDir dir;
  write(dir / "b/lcm_0001.json", R"({"lcm_instance_id": "m1", "edges": []})");
  write(dir / "b/notes.txt", "not a model");
  write(dir / "a/x.lcm.json", R"({"edges": [{"src": "p", "dst": "q"}]})");
  write(dir / "a/scores.csv", "lcm_instance_id,score\nx,0.7\n");
  write(dir / "empty/readme.md", "nothing");
  write(dir / "c/lcm_0001.json", "{broken");
  write(dir / "stray.json", "{}");
  Diagnostics diag;
  const auto runs = scan_runs_root(dir.path(), diag);
  REQUIRE(runs.size() == 3);
  CHECK(runs[0].doc_id == "a");
  CHECK(runs[0].scores_path.has_value());
  CHECK(runs[1].doc_id == "b");
  CHECK(runs[1].lcm_paths.size() == 1);
  const auto lcms = load_runs(runs, diag);
  REQUIRE(lcms.size() == 2);
  CHECK(lcms[0].lcm_instance_id == "x");
  CHECK(lcms[0].score == 0.7);
  CHECK(diag.failed_files == 1);
  CHECK_THROWS_AS(scan_runs_root(dir / "missing", diag), IoError);
}

TEST_CASE("golden fixture loads cleanly") {
  Diagnostics diag;
  const auto runs = scan_runs_root(testing::golden_runs(), diag);
  REQUIRE(runs.size() == 3);
  const auto lcms = load_runs(runs, diag);
  CHECK(diag.failed_files == 0);
  CHECK(lcms.size() > 100);
  for (const auto& lcm : lcms) {
    CHECK_FALSE(lcm.lcm_instance_id.empty());
    CHECK((lcm.score || lcm.score_raw));
  }
}

TEST_CASE("claims csv parsing") {
  Diagnostics diag;
  const auto claims = parse_claims_csv("cause,effect,sign,method,doc_id,year\n"
                                       "smoking,cancer,+,RCT,p1,2001\n"
                                       "smoking,,+,RCT,p1,2001\n"
                                       "a,b,,,,1999\n"
                                       "a,b,,,p2,soon\n"
                                       "\"x, y\",z,-,,p3,\n",
                                       diag);
  REQUIRE(claims.size() == 3);
  CHECK(claims[0].sign == "+");
  CHECK(claims[0].method == "RCT");
  CHECK(claims[0].year == 2001);
  CHECK_FALSE(claims[1].year.has_value());
  CHECK(claims[2].cause == "x, y");
  CHECK_FALSE(claims[2].method.has_value());
  CHECK(diag.warnings.size() == 3);
  CHECK_THROWS_AS(parse_claims_csv("cause,doc_id\na,b\n", diag), FormatError);
  CHECK_THROWS_AS(parse_claims_csv("", diag), FormatError);
  CHECK(parse_claims_csv("effect,cause,doc_id\n", diag).empty());
}
