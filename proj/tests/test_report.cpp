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
#include "causaldb/report.hpp"
#include "test_support.hpp"

using namespace causaldb;
using testing::make_lcm;

TEST_CASE("stats report keys and display rounding") {
  const auto j = stats_report(testing::golden_atlas());
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"n_nodes", "n_edges", "n_support", "top_hub", "top1_share", "top5_share",
                                         "p50", "p90", "p99", "tail_ratio", "rel_mass", "display"});
  CHECK(j["display"]["tail_ratio"] == 40.8);
  CHECK(j["display"]["top1_share"] == 0.7478);
  CHECK(j["display"]["p99"] == 1.3765);
  CHECK(j["rel_mass"][0]["rel_type"] == "INFLUENCES");
}

TEST_CASE("summary json round-trips") {
  const Atlas golden = testing::golden_atlas();
  const AtlasSummary s = atlas_summary(golden);
  const AtlasSummary back = summary_from_json(nlohmann::json::parse(summary_json(s).dump()));
  CHECK(back.n_nodes == s.n_nodes);
  CHECK(back.top_hub == s.top_hub);
  CHECK(back.top1_share == s.top1_share);
  CHECK(back.p90 == s.p90);
  CHECK(back.tail_ratio == s.tail_ratio);
  REQUIRE(back.rel_mass.size() == s.rel_mass.size());
  for (std::size_t i = 0; i < s.rel_mass.size(); ++i) {
    CHECK(back.rel_mass[i].rel_type == s.rel_mass[i].rel_type);
    CHECK(back.rel_mass[i].polarity == s.rel_mass[i].polarity);
    CHECK(back.rel_mass[i].mass == s.rel_mass[i].mass);
  }
}

TEST_CASE("zero median gives a null tail ratio") {
  std::vector<Lcm> lcms = {make_lcm("d", "a", {{"x", "causes", "y"}}, 0.0),
                           make_lcm("d", "b", {{"y", "causes", "z"}}, 0.0),
                           make_lcm("d", "c", {{"z", "causes", "w"}}, 1.0)};
  Diagnostics diag;
  const auto j = stats_report(build_atlas(lcms, {}, diag));
  CHECK(j["tail_ratio"].is_null());
  CHECK(j["display"]["tail_ratio"].is_null());
  CHECK_FALSE(summary_from_json(j).tail_ratio.has_value());
}

TEST_CASE("single edge atlas") {
  std::vector<Lcm> lcms = {make_lcm("d", "a", {{"x", "causes", "y"}}, 0.5)};
  Diagnostics diag;
  const auto s = atlas_summary(build_atlas(lcms, {}, diag));
  CHECK(s.top1_share == 1.0);
  CHECK(s.p50 == 0.5);
  CHECK(s.tail_ratio == 1.0);
}

TEST_CASE("malformed reports") {
  CHECK_THROWS_AS(summary_from_json(nlohmann::json::object()), FormatError);
  auto j = nlohmann::json::parse(stats_report(testing::golden_atlas()).dump());
  j["rel_mass"][0]["rel_type"] = "SPURS";
  CHECK_THROWS_AS(summary_from_json(j), FormatError);
  j = nlohmann::json::parse(stats_report(testing::golden_atlas()).dump());
  j["p50"] = "high";
  CHECK_THROWS_AS(summary_from_json(j), FormatError);
}
