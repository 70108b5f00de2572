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
#include "causaldb/query.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <unordered_map>

#include "causaldb/error.hpp"

namespace causaldb {

namespace {

bool ranks_before(const EdgeResultRow& a, const EdgeResultRow& b) {
  if (a.score_sum != b.score_sum) return a.score_sum > b.score_sum;
  return std::make_tuple(std::string_view(a.src), std::string_view(a.dst), to_string(a.rel_type)) <
         std::make_tuple(std::string_view(b.src), std::string_view(b.dst), to_string(b.rel_type));
}

EdgeResultRow make_row(const Atlas& atlas, const EdgeRow& e, double score) {
  return EdgeResultRow{e.edge_id, e.rel_type, atlas.label(e.src_id), atlas.label(e.dst_id), e.support_lcms, score};
}

void rank_and_truncate(std::vector<EdgeResultRow>& rows, std::size_t limit) {
  if (rows.size() > limit) {
    std::partial_sort(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(limit), rows.end(), ranks_before);
    rows.resize(limit);
  } else {
    std::sort(rows.begin(), rows.end(), ranks_before);
  }
}

const NodeRow& require_label(const Atlas& atlas, std::string_view label) {
  const NodeRow* n = atlas.find_label(label);
  if (n == nullptr) throw NotFound("unknown concept '" + std::string(label) + "'");
  return *n;
}

void require_limit(std::size_t limit) {
  if (limit == 0) throw InvalidArgument("limit must be >= 1");
}

}  // namespace

std::vector<EdgeResultRow> backbone(const EdgeView& view, std::size_t limit) {
  require_limit(limit);
  const Atlas& atlas = view.base();
  std::vector<EdgeResultRow> rows;
  rows.reserve(atlas.edges().size());
  view.for_each_edge([&](const EdgeRow& e, double score) { rows.push_back(make_row(atlas, e, score)); });
  rank_and_truncate(rows, limit);
  return rows;
}

std::vector<EdgeResultRow> mechanisms(const EdgeView& view, std::string_view src_label, std::size_t limit) {
  require_limit(limit);
  const Atlas& atlas = view.base();
  const NodeRow& src = require_label(atlas, src_label);
  std::vector<EdgeResultRow> rows;
  for (std::size_t pos : atlas.out_edges(src.node_id)) {
    const EdgeRow& e = atlas.edges()[pos];
    if (view.contains(e)) rows.push_back(make_row(atlas, e, view.effective_score(e)));
  }
  rank_and_truncate(rows, limit);
  return rows;
}

std::vector<SupportRow> provenance(const Atlas& atlas, EdgeId edge) {
  if (atlas.find_edge(edge) == nullptr) throw NotFound("unknown edge_id " + std::to_string(edge.value));
  std::vector<SupportRow> rows;
  for (std::size_t pos : atlas.support_rows(edge)) rows.push_back(atlas.support()[pos]);
  std::stable_sort(rows.begin(), rows.end(), [](const SupportRow& a, const SupportRow& b) {
    return std::tie(a.doc_id, a.lcm_instance_id) < std::tie(b.doc_id, b.lcm_instance_id);
  });
  return rows;
}

std::vector<PathRow> two_hop_paths(const EdgeView& view, std::size_t limit) {
  require_limit(limit);
  const Atlas& atlas = view.base();
  std::vector<PathRow> paths;
  view.for_each_edge([&](const EdgeRow& e1, double s1) {
    for (std::size_t pos : atlas.out_edges(e1.dst_id)) {
      const EdgeRow& e2 = atlas.edges()[pos];
      if (!view.contains(e2)) continue;
      paths.push_back(PathRow{atlas.label(e1.src_id), atlas.label(e1.dst_id), atlas.label(e2.dst_id), e1.rel_type,
                              e2.rel_type, s1 + view.effective_score(e2)});
    }
  });
  const auto before = [](const PathRow& x, const PathRow& y) {
    if (x.path_score != y.path_score) return x.path_score > y.path_score;
    return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c) ||
           (std::tie(x.a, x.b, x.c) == std::tie(y.a, y.b, y.c) &&
            std::make_pair(to_string(x.r1), to_string(x.r2)) < std::make_pair(to_string(y.r1), to_string(y.r2)));
  };
  if (paths.size() > limit) {
    std::partial_sort(paths.begin(), paths.begin() + static_cast<std::ptrdiff_t>(limit), paths.end(), before);
    paths.resize(limit);
  } else {
    std::sort(paths.begin(), paths.end(), before);
  }
  return paths;
}

std::vector<MutualRow> mutual_influence(const EdgeView& view) {
  const Atlas& atlas = view.base();
  std::vector<MutualRow> rows;
  view.for_each_edge([&](const EdgeRow& e1, double) {
    const std::string& a = atlas.label(e1.src_id);
    const std::string& b = atlas.label(e1.dst_id);
    if (!(a < b)) return;
    for (std::size_t pos : atlas.out_edges(e1.dst_id)) {
      const EdgeRow& e2 = atlas.edges()[pos];
      if (e2.dst_id != e1.src_id || !view.contains(e2)) continue;
      rows.push_back(MutualRow{a, e1.rel_type, b, e2.rel_type});
    }
  });
  std::sort(rows.begin(), rows.end(), [](const MutualRow& x, const MutualRow& y) {
    return std::make_tuple(std::string_view(x.a), std::string_view(x.b), to_string(x.r1), to_string(x.r2)) <
           std::make_tuple(std::string_view(y.a), std::string_view(y.b), to_string(y.r1), to_string(y.r2));
  });
  return rows;
}

EdgeView do_cut(const EdgeView& view, std::string_view label) {
  return view.without_source(require_label(view.base(), label).node_id);
}

EdgeView soft_do(const EdgeView& view, std::string_view label, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidArgument("soft intervention lambda must be >= 0");
  return view.with_scaled_source(require_label(view.base(), label).node_id, lambda);
}

CounterfactualDiff counterfactual_diff(const std::vector<EdgeResultRow>& base,
                                       const std::vector<EdgeResultRow>& intervened) {
  std::unordered_map<EdgeId, std::size_t> new_rank;
  for (std::size_t i = 0; i < intervened.size(); ++i) new_rank.emplace(intervened[i].edge_id, i + 1);
  CounterfactualDiff diff;
  for (std::size_t i = 0; i < base.size(); ++i) {
    auto it = new_rank.find(base[i].edge_id);
    if (it == new_rank.end()) {
      diff.vanished.push_back(base[i]);
    } else if (it->second != i + 1) {
      diff.rank_changes.push_back(RankChange{base[i].edge_id, i + 1, it->second});
    }
  }
  return diff;
}

}  // namespace causaldb
