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

#include <map>
#include <random>
#include <set>
#include <tuple>

#include "causaldb/builder.hpp"
#include "causaldb/error.hpp"
#include "test_support.hpp"

using namespace causaldb;
using testing::make_lcm;

namespace {

const EdgeRow& edge_of(const Atlas& a, std::string_view src, RelType rel, std::string_view dst) {
  const EdgeRow* e = a.find_edge(edge_key(node_id(src), rel, node_id(dst)));
  REQUIRE(e != nullptr);
  return *e;
}

}  // namespace

TEST_CASE("repeated claims aggregate onto one canonical edge") {
  std::vector<Lcm> lcms = {
      make_lcm("d1", "m1", {{"Rainfall", "increases", "Crop Yield"}}, 0.5),
      make_lcm("d1", "m2", {{"rainfall", "raises", "crop yield."}}, 0.25),
      make_lcm("d2", "m1", {{"RAINFALL", "boosts", "crop  yield"}}, 1.0),
  };
  Diagnostics diag;
  const Atlas a = build_atlas(lcms, {}, diag);
  REQUIRE(a.edges().size() == 1);
  const EdgeRow& e = a.edges()[0];
  CHECK(e.rel_type == RelType::INCREASES);
  CHECK(e.polarity == Polarity::inc);
  CHECK(e.support_lcms == 3);
  CHECK(e.support_docs == 2);
  CHECK(e.score_sum == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(e.score_max == 1.0);
  CHECK(e.score_mean == doctest::Approx(1.75 / 3));
  CHECK(e.pol_mass_inc == doctest::Approx(1.75));
  CHECK(e.controversy == 0.0);
  REQUIRE(a.nodes().size() == 2);
  const NodeRow* rain = a.find_label("rainfall");
  REQUIRE(rain != nullptr);
  CHECK(rain->label_examples == std::vector<std::string>{"Rainfall", "rainfall", "RAINFALL"});
  CHECK(rain->deg_out == 1);
  CHECK(rain->deg_in == 0);
  CHECK(a.support().size() == 3);
}

TEST_CASE("weights fall back from score to score_raw to the default") {
  Lcm a = make_lcm("d", "a", {{"x", "causes", "y"}}, 0.3);
  a.score_raw = 9;
  Lcm b = make_lcm("d", "b", {{"x", "causes", "y"}});
  b.score_raw = 2;
  Lcm c = make_lcm("d", "c", {{"x", "causes", "y"}});
  BuildConfig cfg;
  cfg.default_weight = 0.125;
  CHECK(lcm_weight(a, cfg) == 0.3);
  CHECK(lcm_weight(b, cfg) == 2.0);
  CHECK(lcm_weight(c, cfg) == 0.125);
  Diagnostics diag;
  const Atlas atlas = build_atlas(std::vector<Lcm>{a, b, c}, cfg, diag);
  CHECK(atlas.edges()[0].score_sum == doctest::Approx(2.425));
}

TEST_CASE("repeated edges inside one LCM count once in support_lcms") {
  std::vector<Lcm> lcms = {make_lcm("d", "m", {{"x", "causes", "y"}, {"X", "cause", "Y"}}, 0.5)};
  Diagnostics diag;
  const Atlas a = build_atlas(lcms, {}, diag);
  REQUIRE(a.edges().size() == 1);
  CHECK(a.edges()[0].support_lcms == 1);
  CHECK(a.edges()[0].score_sum == 1.0);
  CHECK(a.support().size() == 2);
}

TEST_CASE("opposing polarities make an edge controversial") {
  std::vector<Lcm> lcms = {
      make_lcm("d1", "m1", {{"a", "increases", "b"}}, 0.6),
      make_lcm("d2", "m1", {{"a", "does not increase", "b"}}, 0.4),
  };
  Diagnostics diag;
  const Atlas atlas = build_atlas(lcms, {}, diag);
  const EdgeRow& e = edge_of(atlas, "a", RelType::INCREASES, "b");
  CHECK(e.pol_mass_inc == 0.6);
  CHECK(e.pol_mass_dec == 0.4);
  CHECK(e.polarity == Polarity::inc);
  CHECK(e.controversy == doctest::Approx(0.4 / (1.0 + 1e-9)));
}

TEST_CASE("controversy and dominant polarity") {
  CHECK(controversy(0, 0, 1e-9) == 0.0);
  CHECK(controversy(1, 0, 1e-9) == 0.0);
  CHECK(controversy(1, 1, 1e-9) < 0.5);
  CHECK(controversy(1, 1, 1e-9) == doctest::Approx(0.5));
  CHECK(dominant_polarity(2, 1, 1) == Polarity::inc);
  CHECK(dominant_polarity(1, 2, 1) == Polarity::dec);
  CHECK(dominant_polarity(1, 1, 0) == Polarity::unk);
  CHECK(dominant_polarity(2, 0, 2) == Polarity::unk);
  CHECK(dominant_polarity(0, 0, 0) == Polarity::unk);
}

TEST_CASE("tau drops small LCMs") {
  std::vector<Lcm> lcms = {
      make_lcm("d", "small", {{"a", "causes", "b"}}, 1.0),
      make_lcm("d", "big", {{"c", "causes", "d"}, {"d", "causes", "e"}}, 1.0),
  };
  BuildConfig cfg;
  cfg.tau = 2;
  Diagnostics diag;
  const Atlas a = build_atlas(lcms, cfg, diag);
  CHECK(a.edges().size() == 2);
  CHECK(a.find_label("a") == nullptr);
  cfg.tau = 0;
  CHECK(build_atlas(lcms, cfg, diag).edges().size() == 3);
}

TEST_CASE("relation filters drop edges but keep their endpoints") {
  std::vector<Lcm> lcms = {make_lcm("d", "m", {{"a", "causes", "b"}, {"b", "reduces", "c"}}, 1.0)};
  BuildConfig cfg;
  cfg.rel_blacklist = std::set<RelType>{RelType::REDUCES};
  Diagnostics diag;
  Atlas a = build_atlas(lcms, cfg, diag);
  CHECK(a.edges().size() == 1);
  REQUIRE(a.find_label("c") != nullptr);
  CHECK(a.find_label("c")->deg_in == 0);
  cfg.rel_blacklist.reset();
  cfg.rel_whitelist = std::set<RelType>{RelType::REDUCES};
  a = build_atlas(lcms, cfg, diag);
  REQUIRE(a.edges().size() == 1);
  CHECK(a.edges()[0].rel_type == RelType::REDUCES);
  cfg.rel_blacklist = std::set<RelType>{RelType::REDUCES};
  CHECK_THROWS_AS(build_atlas(lcms, cfg, diag), InvalidArgument);
}

TEST_CASE("radius and model-size filters apply only to LCMs that report them") {
  Lcm wide = make_lcm("d", "wide", {{"a", "causes", "b"}}, 1.0);
  wide.radius = 5;
  Lcm tiny = make_lcm("d", "tiny", {{"c", "causes", "d"}}, 1.0);
  tiny.model_size = 2;
  Lcm plain = make_lcm("d", "plain", {{"e", "causes", "f"}}, 1.0);
  BuildConfig cfg;
  cfg.max_radius = 3;
  cfg.min_model_size = 4;
  Diagnostics diag;
  const Atlas a = build_atlas(std::vector<Lcm>{wide, tiny, plain}, cfg, diag);
  REQUIRE(a.edges().size() == 1);
  CHECK(a.label(a.edges()[0].src_id) == "e");
}

TEST_CASE("invalid configuration and weights") {
  Diagnostics diag;
  BuildConfig cfg;
  cfg.tau = -1;
  CHECK_THROWS_AS(build_atlas(std::vector<Lcm>{}, cfg, diag), InvalidArgument);
  cfg = {};
  cfg.default_weight = -1;
  CHECK_THROWS_AS(build_atlas(std::vector<Lcm>{}, cfg, diag), InvalidArgument);
  CHECK_THROWS_AS(accumulate_edge({}, {-0.5, Polarity::unk, "d", "m"}), InvalidArgument);
  CHECK_THROWS_AS(accumulate_edge({}, {std::nan(""), Polarity::unk, "d", "m"}), InvalidArgument);
}

TEST_CASE("edges with empty labels are dropped with a warning") {
  std::vector<Lcm> lcms = {make_lcm("d", "m", {{"...", "causes", "b"}, {"a", "causes", "b"}}, 1.0)};
  Diagnostics diag;
  const Atlas a = build_atlas(lcms, {}, diag);
  CHECK(a.edges().size() == 1);
  CHECK(diag.warnings.size() == 1);
}

TEST_CASE("build output is independent of input order and sorted") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    auto lcms = testing::random_corpus(rng, 5, "doc");
    Diagnostics diag;
    const Atlas a = build_atlas(lcms, {}, diag);
    std::shuffle(lcms.begin(), lcms.end(), rng);
    const Atlas b = build_atlas(lcms, {}, diag);
    CHECK(std::equal(a.nodes().begin(), a.nodes().end(), b.nodes().begin(), b.nodes().end()));
    CHECK(std::equal(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end()));
    CHECK(std::equal(a.support().begin(), a.support().end(), b.support().begin(), b.support().end()));
    CHECK(std::is_sorted(a.edges().begin(), a.edges().end(),
                         [](const EdgeRow& x, const EdgeRow& y) { return x.edge_id < y.edge_id; }));
    CHECK(std::is_sorted(a.nodes().begin(), a.nodes().end(),
                         [](const NodeRow& x, const NodeRow& y) { return x.node_id < y.node_id; }));
  }
}

TEST_CASE("aggregates match an independent per-edge oracle") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto lcms = testing::random_corpus(rng, 6, "doc");
    struct Expect {
      double sum = 0, max = 0, inc = 0, dec = 0, unk = 0;
      std::set<std::pair<std::string, std::string>> lcms;
      std::set<std::string> docs;
      std::size_t rows = 0;
    };
    std::map<std::tuple<std::string, RelType, std::string>, Expect> oracle;
    std::set<std::string> labels;
    // Fold in the same canonical order so sums agree bit for bit.
    auto sorted = lcms;
    std::stable_sort(sorted.begin(), sorted.end(), [](const Lcm& a, const Lcm& b) {
      return std::tie(a.doc_id, a.lcm_instance_id) < std::tie(b.doc_id, b.lcm_instance_id);
    });
    for (const auto& lcm : sorted) {
      const double w = lcm.score ? *lcm.score : lcm.score_raw ? *lcm.score_raw : 1.0;
      for (const auto& raw : lcm.edges) {
        const auto cls = rel_type(raw.rel);
        auto& x = oracle[{canon_label(raw.src), cls.type, canon_label(raw.dst)}];
        labels.insert(canon_label(raw.src));
        labels.insert(canon_label(raw.dst));
        x.sum += w;
        x.max = std::max(x.max, w);
        (cls.polarity == Polarity::inc ? x.inc : cls.polarity == Polarity::dec ? x.dec : x.unk) += w;
        x.lcms.emplace(lcm.doc_id, lcm.lcm_instance_id);
        x.docs.insert(lcm.doc_id);
        ++x.rows;
      }
    }
    Diagnostics diag;
    const Atlas a = build_atlas(lcms, {}, diag);
    REQUIRE(a.edges().size() == oracle.size());
    CHECK(a.nodes().size() == labels.size());
    std::size_t rows = 0;
    for (const auto& [key, x] : oracle) {
      const auto& [src, rel, dst] = key;
      const EdgeRow& e = edge_of(a, src, rel, dst);
      CHECK(e.score_sum == x.sum);
      CHECK(e.score_max == x.max);
      CHECK(e.pol_mass_inc == x.inc);
      CHECK(e.pol_mass_dec == x.dec);
      CHECK(e.pol_mass_unk == x.unk);
      CHECK(e.support_lcms == static_cast<std::int64_t>(x.lcms.size()));
      CHECK(e.support_docs == static_cast<std::int64_t>(x.docs.size()));
      CHECK(a.support_rows(e.edge_id).size() == x.rows);
      rows += x.rows;
    }
    CHECK(a.support().size() == rows);
  }
}

TEST_CASE("claims build: one unit-weight INFLUENCES event per claim") {
  std::vector<ClaimRow> claims = {
      {"Smoking", "Cancer", "+", "RCT", "p1", 2001},
      {"smoking", "cancer", std::nullopt, std::nullopt, "p1", std::nullopt},
      {"smoking", "cancer", "-", std::nullopt, "p2", 1999},
      {"diet", "...", std::nullopt, std::nullopt, "p3", std::nullopt},
  };
  Diagnostics diag;
  const Atlas a = build_from_claims(claims, {}, diag);
  REQUIRE(a.edges().size() == 1);
  CHECK(a.edges()[0].rel_type == RelType::INFLUENCES);
  CHECK(a.edges()[0].score_sum == 3.0);
  CHECK(a.edges()[0].support_lcms == 3);
  CHECK(a.edges()[0].support_docs == 2);
  CHECK(a.support().size() == 3);
  CHECK(a.support()[0].lcm_instance_id == "claim:1");
  CHECK(a.support()[0].method == "RCT");
  CHECK(a.support()[0].year == 2001);
  CHECK(diag.warnings.size() == 1);
  BuildConfig cfg;
  cfg.rel_whitelist = std::set<RelType>{RelType::CAUSES};
  const Atlas empty = build_from_claims(claims, cfg, diag);
  CHECK(empty.edges().empty());
  CHECK(empty.nodes().size() == 2);
}

TEST_CASE("atlas constructor rejects broken references") {
  const NodeId a = node_id("a");
  const NodeId b = node_id("b");
  NodeRow na{a, "a", {}, 0, 1};
  EdgeRow e;
  e.edge_id = edge_key(a, RelType::CAUSES, b);
  e.src_id = a;
  e.dst_id = b;
  e.rel_type = RelType::CAUSES;
  CHECK_THROWS_AS(Atlas("x", {na}, {e}, {}), IntegrityError);
  NodeRow wrong{node_id("zzz"), "b", {}, 1, 0};
  CHECK_THROWS_AS(Atlas("x", {na, wrong}, {}, {}), IntegrityError);
  SupportRow s;
  s.edge_id = EdgeId{42};
  CHECK_THROWS_AS(Atlas("x", {na}, {}, {s}), IntegrityError);
}
