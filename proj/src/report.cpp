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
#include "causaldb/report.hpp"

#include <cmath>

#include "causaldb/error.hpp"

namespace causaldb {

namespace {

double round_to(double v, int digits) {
  const double scale = std::pow(10.0, digits);
  return std::round(v * scale) / scale;
}

}  // namespace

nlohmann::ordered_json summary_json(const AtlasSummary& s) {
  nlohmann::ordered_json j;
  j["n_nodes"] = s.n_nodes;
  j["n_edges"] = s.n_edges;
  j["n_support"] = s.n_support;
  j["top_hub"] = s.top_hub;
  j["top1_share"] = s.top1_share;
  j["top5_share"] = s.top5_share;
  j["p50"] = s.p50;
  j["p90"] = s.p90;
  j["p99"] = s.p99;
  j["tail_ratio"] = s.tail_ratio ? nlohmann::ordered_json(*s.tail_ratio) : nlohmann::ordered_json(nullptr);
  auto rel = nlohmann::ordered_json::array();
  for (const auto& r : s.rel_mass) {
    nlohmann::ordered_json row;
    row["rel_type"] = std::string(to_string(r.rel_type));
    row["polarity"] = std::string(to_string(r.polarity));
    row["n_edges"] = r.n_edges;
    row["mass"] = r.mass;
    rel.push_back(std::move(row));
  }
  j["rel_mass"] = std::move(rel);

  nlohmann::ordered_json display;
  display["top1_share"] = round_to(s.top1_share, 4);
  display["top5_share"] = round_to(s.top5_share, 4);
  display["p50"] = round_to(s.p50, 4);
  display["p90"] = round_to(s.p90, 4);
  display["p99"] = round_to(s.p99, 4);
  display["tail_ratio"] =
      s.tail_ratio ? nlohmann::ordered_json(round_to(*s.tail_ratio, 1)) : nlohmann::ordered_json(nullptr);
  j["display"] = std::move(display);
  return j;
}

nlohmann::ordered_json stats_report(const Atlas& atlas) { return summary_json(atlas_summary(atlas)); }

AtlasSummary summary_from_json(const nlohmann::json& j) {
  AtlasSummary s;
  try {
    s.n_nodes = j.at("n_nodes").get<std::int64_t>();
    s.n_edges = j.at("n_edges").get<std::int64_t>();
    s.n_support = j.at("n_support").get<std::int64_t>();
    s.top_hub = j.at("top_hub").get<std::string>();
    s.top1_share = j.at("top1_share").get<double>();
    s.top5_share = j.at("top5_share").get<double>();
    s.p50 = j.at("p50").get<double>();
    s.p90 = j.at("p90").get<double>();
    s.p99 = j.at("p99").get<double>();
    if (!j.at("tail_ratio").is_null()) s.tail_ratio = j.at("tail_ratio").get<double>();
    for (const auto& row : j.at("rel_mass")) {
      RelMassRow r;
      const auto rel = parse_rel_type(row.at("rel_type").get<std::string>());
      const auto pol = parse_polarity(row.at("polarity").get<std::string>());
      if (!rel || !pol) throw FormatError("unknown relation or polarity in report");
      r.rel_type = *rel;
      r.polarity = *pol;
      r.n_edges = row.at("n_edges").get<std::int64_t>();
      r.mass = row.at("mass").get<double>();
      s.rel_mass.push_back(r);
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed stats report: ") + e.what());
  }
  return s;
}

}  // namespace causaldb
