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
#include "causaldb/builder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace causaldb {

namespace {

struct PendingEdge {
  NodeId src;
  RelType rel;
  NodeId dst;
  EdgeAggregate agg;
};

/// Shared accumulation state for LCM and claim builds.
class AtlasAccumulator {
 public:
  NodeId add_node(const std::string& surface, std::string label) {
    const NodeId id = node_id(label);
    auto [it, inserted] = nodes_.try_emplace(id);
    NodeRow& row = it->second;
    if (inserted) {
      row.node_id = id;
      row.label_canon = std::move(label);
    } else if (row.label_canon != label) {
      throw IntegrityError("node_id collision: '" + row.label_canon + "' and '" + label + "' both hash to " +
                           std::to_string(id.value));
    }
    if (row.label_examples.size() < 3 &&
        std::find(row.label_examples.begin(), row.label_examples.end(), surface) == row.label_examples.end()) {
      row.label_examples.push_back(surface);
    }
    return id;
  }

  void add_support(NodeId src, RelType rel, NodeId dst, SupportRow support) {
    const EdgeId id = edge_key(src, rel, dst);
    auto [it, inserted] = edges_.try_emplace(id, PendingEdge{src, rel, dst, {}});
    PendingEdge& edge = it->second;
    if (!inserted && (edge.src != src || edge.rel != rel || edge.dst != dst)) {
      throw IntegrityError("edge_id collision on " + std::to_string(id.value) + ": '" +
                           edge_key_string(edge.src, edge.rel, edge.dst) + "' vs '" +
                           edge_key_string(src, rel, dst) + "'");
    }
    edge.agg = accumulate_edge(std::move(edge.agg),
                               {support.weight, support.polarity, support.doc_id, support.lcm_instance_id});
    support.edge_id = id;
    support_.push_back(std::move(support));
  }

  Atlas finish(const std::string& atlas_id, double eps) {
    std::vector<EdgeRow> edges;
    edges.reserve(edges_.size());
    for (const auto& [id, pending] : edges_) {
      edges.push_back(materialize_edge(id, pending.src, pending.rel, pending.dst, pending.agg, eps));
    }
    std::sort(edges.begin(), edges.end(),
              [](const EdgeRow& a, const EdgeRow& b) { return a.edge_id < b.edge_id; });

    std::vector<NodeRow> nodes;
    nodes.reserve(nodes_.size());
    for (auto& [id, row] : nodes_) nodes.push_back(std::move(row));
    nodes = finalize_nodes(edges, std::move(nodes));

    std::stable_sort(support_.begin(), support_.end(), [](const SupportRow& a, const SupportRow& b) {
      if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
      return a.lcm_instance_id < b.lcm_instance_id;
    });
    return Atlas(atlas_id, std::move(nodes), std::move(edges), std::move(support_));
  }

 private:
  std::unordered_map<NodeId, NodeRow> nodes_;
  std::unordered_map<EdgeId, PendingEdge> edges_;
  std::vector<SupportRow> support_;
};

}  // namespace

void BuildConfig::validate() const {
  if (tau < 0) throw InvalidArgument("tau must be >= 0");
  if (!(default_weight >= 0.0) || !std::isfinite(default_weight)) {
    throw InvalidArgument("default weight must be a finite value >= 0");
  }
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be > 0");
  if (rel_whitelist && rel_blacklist) {
    for (RelType r : *rel_whitelist) {
      if (rel_blacklist->count(r)) {
        throw InvalidArgument("relation " + std::string(to_string(r)) + " is both whitelisted and blacklisted");
      }
    }
  }
}

EdgeAggregate accumulate_edge(EdgeAggregate agg, const SupportEvent& event) {
  if (!(event.weight >= 0.0) || !std::isfinite(event.weight)) {
    throw InvalidArgument("support weight must be finite and >= 0, got " + std::to_string(event.weight));
  }
  agg.score_sum += event.weight;
  agg.score_max = std::max(agg.score_max, event.weight);
  switch (event.polarity) {
    case Polarity::inc: agg.pol_mass_inc += event.weight; break;
    case Polarity::dec: agg.pol_mass_dec += event.weight; break;
    case Polarity::unk: agg.pol_mass_unk += event.weight; break;
  }
  agg.lcms.emplace(event.doc_id, event.lcm_instance_id);
  agg.docs.insert(event.doc_id);
  return agg;
}

double controversy(double m_inc, double m_dec, double eps) {
  return std::min(m_inc, m_dec) / (m_inc + m_dec + eps);
}

Polarity dominant_polarity(double m_inc, double m_dec, double m_unk) {
  if (m_inc > m_dec && m_inc > m_unk) return Polarity::inc;
  if (m_dec > m_inc && m_dec > m_unk) return Polarity::dec;
  return Polarity::unk;
}

EdgeRow materialize_edge(EdgeId id, NodeId src, RelType rel, NodeId dst, const EdgeAggregate& agg,
                         double eps) {
  EdgeRow row;
  row.edge_id = id;
  row.src_id = src;
  row.dst_id = dst;
  row.rel_type = rel;
  row.polarity = dominant_polarity(agg.pol_mass_inc, agg.pol_mass_dec, agg.pol_mass_unk);
  row.support_lcms = static_cast<std::int64_t>(agg.lcms.size());
  row.support_docs = static_cast<std::int64_t>(agg.docs.size());
  row.score_sum = agg.score_sum;
  row.score_mean = row.support_lcms > 0 ? agg.score_sum / static_cast<double>(row.support_lcms) : 0.0;
  row.score_max = agg.score_max;
  row.pol_mass_inc = agg.pol_mass_inc;
  row.pol_mass_dec = agg.pol_mass_dec;
  row.pol_mass_unk = agg.pol_mass_unk;
  row.controversy = controversy(agg.pol_mass_inc, agg.pol_mass_dec, eps);
  return row;
}

std::vector<NodeRow> finalize_nodes(std::span<const EdgeRow> edges, std::vector<NodeRow> nodes) {
  std::sort(nodes.begin(), nodes.end(), [](const NodeRow& a, const NodeRow& b) { return a.node_id < b.node_id; });
  std::unordered_map<NodeId, std::size_t> pos;
  pos.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    nodes[i].deg_in = 0;
    nodes[i].deg_out = 0;
    pos.emplace(nodes[i].node_id, i);
  }
  for (const auto& e : edges) {
    auto s = pos.find(e.src_id);
    auto d = pos.find(e.dst_id);
    if (s == pos.end() || d == pos.end()) {
      throw IntegrityError("edge " + std::to_string(e.edge_id.value) + " references a node missing from the node map");
    }
    ++nodes[s->second].deg_out;
    ++nodes[d->second].deg_in;
  }
  return nodes;
}

double lcm_weight(const Lcm& lcm, const BuildConfig& cfg) {
  if (lcm.score) return *lcm.score;
  if (lcm.score_raw) return *lcm.score_raw;
  return cfg.default_weight;
}

Atlas build_atlas(std::span<const Lcm> lcms, const BuildConfig& cfg, Diagnostics& diag) {
  cfg.validate();
  const RelationLexicon& lexicon = cfg.relations();

  std::vector<std::size_t> order(lcms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&lcms](std::size_t a, std::size_t b) {
    if (lcms[a].doc_id != lcms[b].doc_id) return lcms[a].doc_id < lcms[b].doc_id;
    return lcms[a].lcm_instance_id < lcms[b].lcm_instance_id;
  });

  AtlasAccumulator acc;
  for (std::size_t i : order) {
    const Lcm& lcm = lcms[i];
    if (static_cast<std::int64_t>(lcm.edges.size()) < cfg.tau) continue;
    if (cfg.max_radius && lcm.radius && *lcm.radius > *cfg.max_radius) continue;
    if (cfg.min_model_size && lcm.model_size && *lcm.model_size < *cfg.min_model_size) continue;

    const double weight = lcm_weight(lcm, cfg);
    for (const RawEdge& raw : lcm.edges) {
      std::string src_label, dst_label;
      try {
        src_label = canon_label(raw.src);
        dst_label = canon_label(raw.dst);
      } catch (const CanonError& e) {
        diag.warn(lcm.doc_id + "/" + lcm.lcm_instance_id + ": " + e.what() + "; edge dropped");
        continue;
      }
      const NodeId src = acc.add_node(raw.src, std::move(src_label));
      const NodeId dst = acc.add_node(raw.dst, std::move(dst_label));
      const RelClass cls = lexicon.classify(raw.rel);
      if (cfg.rel_whitelist && !cfg.rel_whitelist->count(cls.type)) continue;
      if (cfg.rel_blacklist && cfg.rel_blacklist->count(cls.type)) continue;

      SupportRow row;
      row.doc_id = lcm.doc_id;
      row.atlas_id = cfg.atlas_id;
      row.lcm_instance_id = lcm.lcm_instance_id;
      row.score = lcm.score;
      row.score_raw = lcm.score_raw;
      row.coupling = lcm.coupling;
      row.weight = weight;
      row.polarity = cls.polarity;
      acc.add_support(src, cls.type, dst, std::move(row));
    }
  }
  return acc.finish(cfg.atlas_id, cfg.epsilon);
}

Atlas build_from_claims(std::span<const ClaimRow> claims, const BuildConfig& cfg, Diagnostics& diag) {
  cfg.validate();
  constexpr RelType kClaimRel = RelType::INFLUENCES;
  const bool excluded = (cfg.rel_whitelist && !cfg.rel_whitelist->count(kClaimRel)) ||
                        (cfg.rel_blacklist && cfg.rel_blacklist->count(kClaimRel));
  if (excluded) diag.warn("relation filters exclude INFLUENCES; claims corpus compiles to an empty edge set");

  AtlasAccumulator acc;
  for (std::size_t i = 0; i < claims.size(); ++i) {
    const ClaimRow& claim = claims[i];
    std::string src_label, dst_label;
    try {
      src_label = canon_label(claim.cause);
      dst_label = canon_label(claim.effect);
    } catch (const CanonError& e) {
      diag.warn("claim " + std::to_string(i + 1) + ": " + e.what() + "; dropped");
      continue;
    }
    const NodeId src = acc.add_node(claim.cause, std::move(src_label));
    const NodeId dst = acc.add_node(claim.effect, std::move(dst_label));
    if (excluded) continue;
    SupportRow row;
    row.doc_id = claim.doc_id;
    row.atlas_id = cfg.atlas_id;
    row.lcm_instance_id = "claim:" + std::to_string(i + 1);
    row.weight = 1.0;
    row.polarity = Polarity::unk;
    row.year = claim.year;
    row.method = claim.method;
    row.sign = claim.sign;
    acc.add_support(src, kClaimRel, dst, std::move(row));
  }
  return acc.finish(cfg.atlas_id, cfg.epsilon);
}

}  // namespace causaldb
