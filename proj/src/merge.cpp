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
#include "causaldb/merge.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "causaldb/analytics.hpp"
#include "causaldb/builder.hpp"
#include "causaldb/error.hpp"

namespace causaldb {

namespace {

struct Triple {
  NodeId src;
  RelType rel;
  NodeId dst;
};

}  // namespace

std::vector<SupportRow> disambiguate_doc_ids(std::vector<SupportRow> rows, const std::string& atlas_id) {
  if (atlas_id.empty()) throw InvalidArgument("atlas_id must not be empty");
  for (auto& row : rows) row.doc_id = atlas_id + "::" + row.doc_id;
  return rows;
}

Atlas merge_atlases(const std::vector<std::pair<std::string, Atlas>>& atlases, const MergeOptions& opts) {
  if (atlases.empty()) throw InvalidArgument("merge needs at least one atlas");
  std::set<std::string> ids;
  for (const auto& [id, atlas] : atlases) {
    if (id.empty()) throw InvalidArgument("atlas_id must not be empty");
    if (!ids.insert(id).second) throw InvalidArgument("duplicate atlas_id '" + id + "'");
  }

  std::unordered_map<EdgeId, Triple> triples;
  std::unordered_map<NodeId, NodeRow> node_info;
  std::vector<SupportRow> support;
  for (const auto& [id, atlas] : atlases) {
    for (const auto& e : atlas.edges()) {
      auto [it, inserted] = triples.try_emplace(e.edge_id, Triple{e.src_id, e.rel_type, e.dst_id});
      const Triple& t = it->second;
      if (!inserted && (t.src != e.src_id || t.rel != e.rel_type || t.dst != e.dst_id)) {
        throw IntegrityError("edge_id " + std::to_string(e.edge_id.value) + " names different triples across inputs");
      }
    }
    for (const auto& n : atlas.nodes()) {
      auto [it, inserted] = node_info.try_emplace(n.node_id, n);
      if (inserted) continue;
      auto& examples = it->second.label_examples;
      for (const auto& ex : n.label_examples) {
        if (examples.size() >= 3) break;
        if (std::find(examples.begin(), examples.end(), ex) == examples.end()) examples.push_back(ex);
      }
    }
    std::vector<SupportRow> rows(atlas.support().begin(), atlas.support().end());
    for (auto& row : rows) {
      if (row.atlas_id.empty()) row.atlas_id = id;
    }
    if (opts.prefix_doc_ids) rows = disambiguate_doc_ids(std::move(rows), id);
    std::move(rows.begin(), rows.end(), std::back_inserter(support));
  }

  std::stable_sort(support.begin(), support.end(), [](const SupportRow& a, const SupportRow& b) {
    return std::tie(a.edge_id, a.atlas_id, a.doc_id, a.lcm_instance_id) <
           std::tie(b.edge_id, b.atlas_id, b.doc_id, b.lcm_instance_id);
  });

  std::map<EdgeId, EdgeAggregate> aggregates;
  for (const auto& row : support) {
    EdgeAggregate& agg = aggregates[row.edge_id];
    agg = accumulate_edge(std::move(agg), {row.weight, row.polarity, row.doc_id, row.lcm_instance_id});
  }

  std::vector<EdgeRow> edges;
  edges.reserve(aggregates.size());
  std::set<NodeId> referenced;
  for (const auto& [id, agg] : aggregates) {
    const Triple& t = triples.at(id);
    edges.push_back(materialize_edge(id, t.src, t.rel, t.dst, agg, opts.epsilon));
    referenced.insert(t.src);
    referenced.insert(t.dst);
  }

  std::vector<NodeRow> nodes;
  nodes.reserve(referenced.size());
  for (NodeId id : referenced) nodes.push_back(node_info.at(id));
  nodes = finalize_nodes(edges, std::move(nodes));

  std::stable_sort(support.begin(), support.end(), [](const SupportRow& a, const SupportRow& b) {
    return std::tie(a.doc_id, a.lcm_instance_id) < std::tie(b.doc_id, b.lcm_instance_id);
  });
  Atlas merged(opts.atlas_id, std::move(nodes), std::move(edges), std::move(support));
  return merged.with_scc(compute_scc(merged));
}

}  // namespace causaldb
