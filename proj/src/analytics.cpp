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
#include "causaldb/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "causaldb/error.hpp"

namespace causaldb {

double out_mass(const EdgeView& view, NodeId node) {
  const Atlas& atlas = view.base();
  if (atlas.find_node(node) == nullptr) throw NotFound("unknown node_id " + std::to_string(node.value));
  double total = 0;
  for (std::size_t pos : atlas.out_edges(node)) {
    const EdgeRow& e = atlas.edges()[pos];
    if (view.contains(e)) total += view.effective_score(e);
  }
  return total;
}

std::vector<HubRow> hub_ranking(const EdgeView& view, std::size_t k) {
  const Atlas& atlas = view.base();
  std::unordered_map<NodeId, std::size_t> slot;
  std::vector<HubRow> hubs;
  view.for_each_edge([&](const EdgeRow& e, double score) {
    auto [it, inserted] = slot.try_emplace(e.src_id, hubs.size());
    if (inserted) hubs.push_back(HubRow{e.src_id, atlas.label(e.src_id), 0.0, 0});
    HubRow& hub = hubs[it->second];
    hub.out_mass += score;
    ++hub.out_degree;
  });
  std::sort(hubs.begin(), hubs.end(), [](const HubRow& a, const HubRow& b) {
    if (a.out_mass != b.out_mass) return a.out_mass > b.out_mass;
    return a.label < b.label;
  });
  if (hubs.size() > k) hubs.resize(k);
  return hubs;
}

double concentration(const EdgeView& view, std::size_t k) {
  const auto hubs = hub_ranking(view, static_cast<std::size_t>(-1));
  double total = 0;
  double top = 0;
  for (std::size_t i = 0; i < hubs.size(); ++i) {
    total += hubs[i].out_mass;
    if (i < k) top += hubs[i].out_mass;
  }
  if (!(total > 0)) throw DegenerateAtlas("total outgoing mass is zero");
  return top / total;
}

std::vector<double> quantiles(std::vector<double> values, std::span<const double> probs) {
  if (values.empty()) throw DegenerateAtlas("quantiles of an empty sample");
  std::sort(values.begin(), values.end());
  std::vector<double> out;
  out.reserve(probs.size());
  double prev = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("quantile probability outside [0,1]");
    if (i > 0 && p < prev) throw InvalidArgument("quantile probabilities must be ascending");
    prev = p;
    const double rank = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = rank - static_cast<double>(lo);
    out.push_back(values[lo] + frac * (values[hi] - values[lo]));
  }
  return out;
}

std::vector<double> score_quantiles(const Atlas& atlas, std::span<const double> probs) {
  if (atlas.edges().empty()) throw DegenerateAtlas("atlas has no edges");
  std::vector<double> scores;
  scores.reserve(atlas.edges().size());
  for (const auto& e : atlas.edges()) scores.push_back(e.score_sum);
  return quantiles(std::move(scores), probs);
}

double tail_ratio(double p50, double p99) {
  if (!(p50 > 0)) throw DegenerateAtlas("tail ratio undefined for a non-positive median");
  return p99 / p50;
}

std::vector<RelMassRow> relation_mass_breakdown(const Atlas& atlas) {
  std::map<std::pair<RelType, Polarity>, RelMassRow> groups;
  for (const auto& e : atlas.edges()) {
    RelMassRow& row = groups[{e.rel_type, e.polarity}];
    row.rel_type = e.rel_type;
    row.polarity = e.polarity;
    ++row.n_edges;
    row.mass += e.score_sum;
  }
  std::vector<RelMassRow> rows;
  rows.reserve(groups.size());
  for (auto& [key, row] : groups) rows.push_back(row);
  std::stable_sort(rows.begin(), rows.end(),
                   [](const RelMassRow& a, const RelMassRow& b) { return a.mass > b.mass; });
  return rows;
}

std::vector<std::vector<std::size_t>> strongly_connected_components(
    std::size_t n, const std::vector<std::vector<std::size_t>>& adjacency) {
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited);
  std::vector<std::size_t> lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t next_index = 0;

  struct Frame {
    std::size_t v;
    std::size_t next_edge;
  };
  std::vector<Frame> call;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call.empty()) {
      Frame& f = call.back();
      const auto& succ = adjacency[f.v];
      if (f.next_edge < succ.size()) {
        const std::size_t w = succ[f.next_edge++];
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[f.v] = std::min(lowlink[f.v], index[w]);
        }
        continue;
      }
      const std::size_t v = f.v;
      call.pop_back();
      if (!call.empty()) lowlink[call.back().v] = std::min(lowlink[call.back().v], lowlink[v]);
      if (lowlink[v] == index[v]) {
        std::vector<std::size_t> component;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != v);
        std::reverse(component.begin(), component.end());
        components.push_back(std::move(component));
      }
    }
  }
  return components;
}

std::vector<SccRow> compute_scc(const Atlas& atlas) {
  const auto nodes = atlas.nodes();
  std::unordered_map<NodeId, std::size_t> pos;
  pos.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) pos.emplace(nodes[i].node_id, i);

  std::vector<std::vector<std::size_t>> adjacency(nodes.size());
  for (const auto& e : atlas.edges()) adjacency[pos.at(e.src_id)].push_back(pos.at(e.dst_id));

  struct Candidate {
    SccRow row;
    std::string min_label;
  };
  std::vector<Candidate> found;
  std::vector<std::size_t> component_of(nodes.size(), static_cast<std::size_t>(-1));
  const auto components = strongly_connected_components(nodes.size(), adjacency);
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (std::size_t v : components[c]) component_of[v] = c;
  }

  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto& members = components[c];
    if (members.size() < 2) continue;
    Candidate cand;
    cand.row.n_nodes = static_cast<std::int64_t>(members.size());

    std::set<std::string> docs;
    for (std::size_t v : members) {
      for (std::size_t ep : atlas.out_edges(nodes[v].node_id)) {
        const EdgeRow& e = atlas.edges()[ep];
        if (component_of[pos.at(e.dst_id)] != c) continue;
        ++cand.row.n_edges;
        for (std::size_t sp : atlas.support_rows(e.edge_id)) docs.insert(atlas.support()[sp].doc_id);
      }
    }
    cand.row.support_docs = static_cast<std::int64_t>(docs.size());

    std::vector<const NodeRow*> ranked;
    for (std::size_t v : members) ranked.push_back(&nodes[v]);
    std::sort(ranked.begin(), ranked.end(), [](const NodeRow* a, const NodeRow* b) {
      const auto da = a->deg_in + a->deg_out;
      const auto db = b->deg_in + b->deg_out;
      if (da != db) return da > db;
      return a->label_canon < b->label_canon;
    });
    cand.min_label = ranked.front()->label_canon;
    for (const NodeRow* n : ranked) cand.min_label = std::min(cand.min_label, n->label_canon);
    for (std::size_t i = 0; i < ranked.size() && i < 5; ++i) cand.row.top_nodes.push_back(ranked[i]->label_canon);
    found.push_back(std::move(cand));
  }

  std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
    if (a.row.n_nodes != b.row.n_nodes) return a.row.n_nodes > b.row.n_nodes;
    if (a.row.n_edges != b.row.n_edges) return a.row.n_edges > b.row.n_edges;
    return a.min_label < b.min_label;
  });
  std::vector<SccRow> rows;
  rows.reserve(found.size());
  for (std::size_t i = 0; i < found.size(); ++i) {
    found[i].row.scc_id = static_cast<std::int64_t>(i + 1);
    rows.push_back(std::move(found[i].row));
  }
  return rows;
}

AtlasSummary atlas_summary(const Atlas& atlas) {
  if (atlas.edges().empty()) throw DegenerateAtlas("atlas has no edges");
  AtlasSummary s;
  s.n_nodes = static_cast<std::int64_t>(atlas.nodes().size());
  s.n_edges = static_cast<std::int64_t>(atlas.edges().size());
  s.n_support = static_cast<std::int64_t>(atlas.support().size());

  const EdgeView view(atlas);
  const auto hubs = hub_ranking(view, 1);
  s.top_hub = hubs.front().label;
  s.top1_share = concentration(view, 1);
  s.top5_share = concentration(view, 5);

  constexpr double kProbs[] = {0.5, 0.9, 0.99};
  const auto q = score_quantiles(atlas, kProbs);
  s.p50 = q[0];
  s.p90 = q[1];
  s.p99 = q[2];
  if (s.p50 > 0) s.tail_ratio = tail_ratio(s.p50, s.p99);
  s.rel_mass = relation_mass_breakdown(atlas);
  return s;
}

}  // namespace causaldb
