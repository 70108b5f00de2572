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
#include <string_view>
#include <unordered_map>
#include <vector>

#include "causaldb/canon.hpp"

namespace causaldb {

struct NodeRow {
  NodeId node_id;
  std::string label_canon;
  std::vector<std::string> label_examples;  // at most 3, first-seen order
  std::int64_t deg_in = 0;
  std::int64_t deg_out = 0;
  friend bool operator==(const NodeRow&, const NodeRow&) = default;
};

struct EdgeRow {
  EdgeId edge_id;
  NodeId src_id;
  NodeId dst_id;
  RelType rel_type = RelType::INFLUENCES;
  Polarity polarity = Polarity::unk;
  std::int64_t support_lcms = 0;
  std::int64_t support_docs = 0;
  double score_sum = 0;
  double score_mean = 0;
  double score_max = 0;
  double pol_mass_inc = 0;
  double pol_mass_dec = 0;
  double pol_mass_unk = 0;
  double controversy = 0;
  friend bool operator==(const EdgeRow&, const EdgeRow&) = default;
};

/// One (document, LCM) contribution to a canonical edge. `weight` and
/// `polarity` record what the contribution added to the edge aggregate so a
/// merge can re-aggregate from support rows alone; year/method/sign are only
/// set for claim-corpus ingests.
struct SupportRow {
  EdgeId edge_id;
  std::string doc_id;
  std::string atlas_id;
  std::string lcm_instance_id;
  std::optional<double> score;
  std::optional<double> score_raw;
  std::optional<double> coupling;
  double weight = 0;
  Polarity polarity = Polarity::unk;
  std::optional<std::int64_t> year;
  std::optional<std::string> method;
  std::optional<std::string> sign;
  friend bool operator==(const SupportRow&, const SupportRow&) = default;
};

struct SccRow {
  std::int64_t scc_id = 0;
  std::int64_t n_nodes = 0;
  std::int64_t n_edges = 0;
  std::int64_t support_docs = 0;
  std::vector<std::string> top_nodes;
  friend bool operator==(const SccRow&, const SccRow&) = default;
};

/// Immutable bundle of the core tables plus lookup indices.
///
/// The constructor validates referential integrity (edge endpoints exist,
/// support rows reference edges, labels hash to their node ids) and throws
/// IntegrityError otherwise. Table order is preserved as given.
class Atlas {
 public:
  Atlas() = default;
  Atlas(std::string atlas_id, std::vector<NodeRow> nodes, std::vector<EdgeRow> edges,
        std::vector<SupportRow> support, std::optional<std::vector<SccRow>> scc = std::nullopt);

  const std::string& atlas_id() const { return atlas_id_; }
  std::span<const NodeRow> nodes() const { return nodes_; }
  std::span<const EdgeRow> edges() const { return edges_; }
  std::span<const SupportRow> support() const { return support_; }
  const std::optional<std::vector<SccRow>>& scc() const { return scc_; }

  const NodeRow* find_node(NodeId id) const;
  const NodeRow* find_label(std::string_view label_canon) const;
  const EdgeRow* find_edge(EdgeId id) const;

  const NodeRow& node(NodeId id) const;  // throws NotFound
  const std::string& label(NodeId id) const { return node(id).label_canon; }

  /// Positions into edges() of the outgoing / incoming edges of a node.
  std::span<const std::size_t> out_edges(NodeId id) const;
  std::span<const std::size_t> in_edges(NodeId id) const;
  /// Positions into support() of the rows of an edge, in table order.
  std::span<const std::size_t> support_rows(EdgeId id) const;

  Atlas with_scc(std::vector<SccRow> scc) const;

 private:
  std::string atlas_id_;
  std::vector<NodeRow> nodes_;
  std::vector<EdgeRow> edges_;
  std::vector<SupportRow> support_;
  std::optional<std::vector<SccRow>> scc_;

  std::unordered_map<NodeId, std::size_t> node_pos_;
  std::unordered_map<std::string, std::size_t> label_pos_;
  std::unordered_map<EdgeId, std::size_t> edge_pos_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::vector<std::size_t>> support_by_edge_;
};

/// "; "-joined with backslash escaping of ';' and '\\'.
std::string join_labels(const std::vector<std::string>& labels);
std::vector<std::string> split_labels(std::string_view joined);

}  // namespace causaldb
