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
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "causaldb/atlas.hpp"
#include "causaldb/canon.hpp"
#include "causaldb/error.hpp"
#include "causaldb/ingest.hpp"

namespace causaldb {

struct BuildConfig {
  std::int64_t tau = 1;  // LCMs with fewer raw edges contribute nothing
  std::optional<std::set<RelType>> rel_whitelist;
  std::optional<std::set<RelType>> rel_blacklist;
  double default_weight = 1.0;
  double epsilon = 1e-9;
  std::string atlas_id = "atlas";
  // Optional LCM filters, off unless set.
  std::optional<std::int64_t> max_radius;
  std::optional<std::int64_t> min_model_size;
  const RelationLexicon* lexicon = nullptr;  // nullptr selects the built-in table

  /// Throws InvalidArgument on tau < 0, overlapping lists, or bad weights.
  void validate() const;
  const RelationLexicon& relations() const {
    return lexicon != nullptr ? *lexicon : RelationLexicon::builtin();
  }
};

struct SupportEvent {
  double weight = 0;
  Polarity polarity = Polarity::unk;
  std::string doc_id;
  std::string lcm_instance_id;
};

/// Running aggregate of one canonical edge. Sums and maxes are order
/// sensitive only in the last floating-point bits; callers feed events in a
/// canonical order.
struct EdgeAggregate {
  double score_sum = 0;
  double score_max = 0;
  double pol_mass_inc = 0;
  double pol_mass_dec = 0;
  double pol_mass_unk = 0;
  std::set<std::pair<std::string, std::string>> lcms;  // (doc_id, lcm_instance_id)
  std::set<std::string> docs;
};

/// Throws InvalidArgument for negative or non-finite weights.
EdgeAggregate accumulate_edge(EdgeAggregate agg, const SupportEvent& event);

/// min(inc, dec) / (inc + dec + eps).
double controversy(double m_inc, double m_dec, double eps);

/// Argmax of the three masses; any tie for the maximum resolves to unk.
Polarity dominant_polarity(double m_inc, double m_dec, double m_unk);

/// Fills every derived EdgeRow field from an aggregate.
EdgeRow materialize_edge(EdgeId id, NodeId src, RelType rel, NodeId dst, const EdgeAggregate& agg,
                         double eps);

/// Degree counts over distinct canonical edges; nodes without edges keep degree 0.
/// Output sorted by node_id.
std::vector<NodeRow> finalize_nodes(std::span<const EdgeRow> edges, std::vector<NodeRow> nodes);

/// Weight used for an LCM: score, then score_raw, then the configured default.
double lcm_weight(const Lcm& lcm, const BuildConfig& cfg);

/// Compiles scored LCMs into an atlas. Input order does not matter: LCMs are
/// folded in (doc_id, lcm_instance_id) order. SCCs are not computed here.
Atlas build_atlas(std::span<const Lcm> lcms, const BuildConfig& cfg, Diagnostics& diag);

/// Compiles a claims corpus: one INFLUENCES/unk support event of weight 1 per claim.
Atlas build_from_claims(std::span<const ClaimRow> claims, const BuildConfig& cfg, Diagnostics& diag);

}  // namespace causaldb
