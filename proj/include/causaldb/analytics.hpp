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
#include <span>
#include <string>
#include <vector>

#include "causaldb/atlas.hpp"
#include "causaldb/view.hpp"

namespace causaldb {

struct HubRow {
  NodeId node;
  std::string label;
  double out_mass = 0;
  std::int64_t out_degree = 0;
};

struct RelMassRow {
  RelType rel_type = RelType::INFLUENCES;
  Polarity polarity = Polarity::unk;
  std::int64_t n_edges = 0;
  double mass = 0;
};

struct AtlasSummary {
  std::int64_t n_nodes = 0;
  std::int64_t n_edges = 0;
  std::int64_t n_support = 0;
  std::string top_hub;
  double top1_share = 0;
  double top5_share = 0;
  double p50 = 0;
  double p90 = 0;
  double p99 = 0;
  std::optional<double> tail_ratio;  // absent when p50 == 0
  std::vector<RelMassRow> rel_mass;
};

/// Sum of effective score_sum over the node's outgoing edges. Throws NotFound
/// for ids absent from the base atlas.
double out_mass(const EdgeView& view, NodeId node);

/// Sources with at least one visible outgoing edge, by out_mass descending
/// then label ascending, truncated to k.
std::vector<HubRow> hub_ranking(const EdgeView& view, std::size_t k);

/// Share of total outgoing mass held by the top-k hubs. Throws
/// DegenerateAtlas when the total is zero.
double concentration(const EdgeView& view, std::size_t k);

/// Linear interpolation at zero-based rank p*(n-1) of the sorted values.
std::vector<double> quantiles(std::vector<double> values, std::span<const double> probs);

/// Quantiles of edge score_sum. Throws DegenerateAtlas on an empty edge table
/// and InvalidArgument on probabilities outside [0,1] or out of order.
std::vector<double> score_quantiles(const Atlas& atlas, std::span<const double> probs);

/// p99 / p50; throws DegenerateAtlas when p50 is not positive.
double tail_ratio(double p50, double p99);

/// Edge count and score mass per (rel_type, dominant polarity), by mass
/// descending.
std::vector<RelMassRow> relation_mass_breakdown(const Atlas& atlas);

/// Strongly connected components of a digraph on vertices 0..n-1 (iterative
/// Tarjan). Every vertex appears in exactly one component; components are
/// returned in reverse topological order, members in discovery order.
std::vector<std::vector<std::size_t>> strongly_connected_components(
    std::size_t n, const std::vector<std::vector<std::size_t>>& adjacency);

/// SCC summaries with at least two members, by n_nodes descending (ties by
/// n_edges descending, then smallest member label). scc_id is the 1-based
/// position in that order.
std::vector<SccRow> compute_scc(const Atlas& atlas);

AtlasSummary atlas_summary(const Atlas& atlas);

}  // namespace causaldb
